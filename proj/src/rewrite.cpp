#include "gammalab/rewrite.hpp"

#include <cctype>

namespace gammalab {

std::string IrredundantProduct::str() const {
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += "*";
        out += factors[i].str();
    }
    return out;
}

RuleKind rule_kind(const GeneratorSymbol& t1, const GeneratorSymbol& t2) {
    if (initial_segment(t2.nu, t1.rho)) return RuleKind::kMerge;
    if (initial_segment(t1.rho, t2.nu)) return RuleKind::kIrredundant;
    return RuleKind::kZero;
}

GeneratorSymbol merge_pair(const GeneratorSymbol& t1, const GeneratorSymbol& t2,
                           const Instance& inst) {
    auto tau = initial_segment(t2.nu, t1.rho);
    if (!tau) throw PreconditionError("merge_pair: rule (II) does not apply");
    std::vector<OrdPair> tail;
    if (t1.rho.amax() > t2.rho.amax())
        for (const OrdPair& p : *tau)
            if (p.a > t2.rho.amax()) tail.push_back(p);
    try {
        Index rho = concat(t2.rho, tail, inst);
        return GeneratorSymbol::make(t1.nu, std::move(rho));
    } catch (const InvalidIndexError& e) {
        throw InternalError(std::string("rule (II) emitted inadmissible symbol for ") +
                            t1.str() + " * " + t2.str() + ": " + e.what());
    }
}

namespace {

class ExprParser {
public:
    ExprParser(const std::string& text, const Instance& inst) : text_(text), inst_(inst) {}

    Expression parse() {
        Expression e;
        e.terms.push_back(term());
        skip_ws();
        while (peek() == '+') {
            ++pos_;
            e.terms.push_back(term());
            skip_ws();
        }
        if (pos_ != text_.size())
            throw ParseError("trailing input at offset " + std::to_string(pos_) +
                             " in '" + text_ + "'");
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Expression::Term term() {
        Expression::Term t;
        if (peek() == 'T') {
            t.factors = product();
            return t;
        }
        t.coeff = integer();
        if (peek() == '*') {
            ++pos_;
            t.factors = product();
        }
        return t;
    }

    std::vector<GeneratorSymbol> product() {
        std::vector<GeneratorSymbol> out;
        out.push_back(generator());
        while (peek() == '*') {
            std::size_t save = pos_;
            ++pos_;
            if (peek() != 'T') {  // '*' belongs to an outer context only if next is not a generator
                pos_ = save;
                break;
            }
            out.push_back(generator());
        }
        return out;
    }

    GeneratorSymbol generator() {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != 'T')
            throw ParseError("expected generator at offset " + std::to_string(pos_) +
                             " in '" + text_ + "'");
        std::size_t close = text_.find(']', pos_);
        if (close == std::string::npos)
            throw ParseError("unterminated generator in '" + text_ + "'");
        std::string chunk = text_.substr(pos_, close - pos_ + 1);
        // reject embedded whitespace inside the bracket chunk
        std::string compact;
        for (char c : chunk)
            if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
        pos_ = close + 1;
        return GeneratorSymbol::parse(compact, inst_);
    }

    long long integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(
                                                       text_[start]))))
            throw ParseError("expected integer at offset " + std::to_string(start) +
                             " in '" + text_ + "'");
        return std::stoll(text_.substr(start, pos_ - start));
    }

    const std::string& text_;
    const Instance& inst_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text, const Instance& inst) {
    return ExprParser(text, inst).parse();
}

}  // namespace gammalab
