#include "gammalab/operators.hpp"

namespace gammalab {

GeneratorSymbol GeneratorSymbol::parse(const std::string& text, const Instance& inst) {
    if (text.size() < 4 || text.substr(0, 2) != "T[" || text.back() != ']')
        throw ParseError("generator must look like T[a,b->c,d]: '" + text + "'");
    std::string body = text.substr(2, text.size() - 3);
    std::size_t arrow = body.find("->");
    if (arrow == std::string::npos)
        throw ParseError("generator missing '->': '" + text + "'");
    Index nu = Index::parse(body.substr(0, arrow), inst);
    Index rho = Index::parse(body.substr(arrow + 2), inst);
    return make(std::move(nu), std::move(rho));
}

std::optional<Index> apply_generator(const GeneratorSymbol& t, const Index& eta,
                                     const Instance& inst) {
    auto tail = initial_segment(t.nu, eta);
    if (!tail) return std::nullopt;
    // Fold over the tail: a pair sticks exactly when its a exceeds the running
    // amax; once one sticks, all later ones do (a-components increase).
    std::vector<OrdPair> img = t.rho.pairs();
    for (const OrdPair& p : *tail)
        if (img.back().a < p.a) img.push_back(p);
    return Index::make(std::move(img), inst);
}

std::vector<GeneratorSymbol> enumerate_generators(const Instance& inst) {
    std::vector<Index> ys = enumerate_y(inst);
    std::vector<GeneratorSymbol> out;
    for (const Index& nu : ys) {
        int need = nu.bmax();
        for (const Index& rho : ys)
            if (rho.amax() >= need) out.push_back(GeneratorSymbol{nu, rho});
    }
    return out;
}

IndexMap index_map(const GeneratorSymbol& t, const YSet& y) {
    IndexMap m;
    m.img.resize(std::size_t(y.size()), -1);
    for (int i = 0; i < y.size(); ++i) {
        auto img = apply_generator(t, y.at(i), y.instance());
        if (!img) continue;
        int j = y.find(*img);
        if (j < 0) throw InternalError("apply_generator image missing from Y: " + img->str());
        m.img[std::size_t(i)] = j;
    }
    return m;
}

std::vector<IndexMap> generator_maps(const YSet& y) {
    std::vector<IndexMap> out;
    for (const GeneratorSymbol& t : enumerate_generators(y.instance()))
        out.push_back(index_map(t, y));
    return out;
}

}  // namespace gammalab
