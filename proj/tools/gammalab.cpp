#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "gammalab/checks.hpp"
#include "gammalab/ideals.hpp"
#include "gammalab/oracle.hpp"
#include "gammalab/random_forms.hpp"

using namespace gammalab;

namespace {

struct CommonArgs {
    int n = 0;
    std::string s_list;
    int prime = 5;
    std::uint64_t seed = 1;
    int max_oracle_dim = 12;
    std::string format = "json";
    std::string out;
    std::string config_path;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool need_instance) {
    if (need_instance) {
        cmd->add_option("--n", args.n, "truncation bound (n >= 2)");
        cmd->add_option("--s", args.s_list, "parameter set, comma list containing 0");
        cmd->add_option("--prime", args.prime, "field characteristic (0 = rationals)");
        cmd->add_option("--max-oracle-dim", args.max_oracle_dim,
                        "largest |Y| the lattice oracle accepts");
    }
    cmd->add_option("--seed", args.seed, "seed for randomized checks");
    cmd->add_option("--format", args.format, "json | csv | text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", args.out, "write the report to this file");
    cmd->add_option("--config", args.config_path, "plain key=value config file (flags win)");
}

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

// Plain key=value configuration; explicit flags win, unknown keys rejected.
void apply_config(CLI::App* cmd, CommonArgs& args) {
    if (args.config_path.empty()) return;
    std::ifstream file(args.config_path);
    if (!file) throw ConfigError("cannot read config file " + args.config_path);
    auto given = [&](const char* flag) {
        const CLI::Option* opt = cmd->get_option_no_throw(flag);
        if (!opt) throw ConfigError(std::string("option ") + flag +
                                    " is not applicable to this subcommand");
        return opt->count() > 0;
    };
    auto to_int = [](const std::string& k, const std::string& v) {
        try {
            std::size_t used = 0;
            long long r = std::stoll(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return r;
        } catch (const std::exception&) {
            throw ConfigError("config key " + k + ": not an integer: '" + v + "'");
        }
    };
    std::string line;
    while (std::getline(file, line)) {
        line = trimmed(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line is not key=value: '" + line + "'");
        std::string key = trimmed(line.substr(0, eq));
        std::string value = trimmed(line.substr(eq + 1));
        if (key == "n") {
            if (!given("--n")) args.n = static_cast<int>(to_int(key, value));
        } else if (key == "s") {
            if (!given("--s")) args.s_list = value;
        } else if (key == "prime") {
            if (!given("--prime")) args.prime = static_cast<int>(to_int(key, value));
        } else if (key == "seed") {
            if (!given("--seed")) args.seed = static_cast<std::uint64_t>(to_int(key, value));
        } else if (key == "max-oracle-dim") {
            if (!given("--max-oracle-dim"))
                args.max_oracle_dim = static_cast<int>(to_int(key, value));
        } else if (key == "format") {
            if (value != "json" && value != "csv" && value != "text")
                throw ConfigError("config key format: want json|csv|text, got '" + value + "'");
            if (!given("--format")) args.format = value;
        } else if (key == "out") {
            if (!given("--out")) args.out = value;
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

Instance instance_from(const CommonArgs& args) {
    if (args.prime < 0) throw ConfigError("prime must be >= 0");
    OracleCaps caps;
    caps.max_oracle_dim = args.max_oracle_dim;
    caps.seed = args.seed;
    return Instance::make(args.n, parse_int_list(args.s_list),
                          static_cast<std::uint32_t>(args.prime), caps);
}

int emit(Report& rep, const CommonArgs& args) {
    rep.sort_records();
    std::string body;
    if (args.format == "json")
        body = rep.to_json().dump(2) + "\n";
    else if (args.format == "csv")
        body = rep.to_csv();
    else
        body = rep.to_text();
    if (!args.out.empty()) {
        std::ofstream f(args.out);
        if (!f) throw ConfigError("cannot write to " + args.out);
        f << body;
        std::cerr << "report written to " << args.out << "\n";
    } else {
        std::cout << body;
    }
    return rep.exit_status();
}

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CheckRecord record_of(const std::string& name, const std::string& anchor,
                      nlohmann::json payload, bool pass, double ms = 0.0) {
    CheckRecord rec;
    rec.name = name;
    rec.anchor = anchor;
    rec.status = pass ? Status::kPass : Status::kFail;
    rec.payload = std::move(payload);
    rec.ms = ms;
    return rec;
}

// Runs the body for the instance's field mode.
template <class Body>
auto with_field(const Instance& inst, Body body) {
    if (inst.prime != 0) return body(Fp(inst.prime));
    return body(Rat{});
}

template <class F>
nlohmann::json subspace_json(const Subspace<F>& s, F field) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < s.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < s.ambient(); ++j) row.push_back(field.str(s.basis().at(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"dim", s.dim()}, {"ambient", s.ambient()}, {"basis", std::move(rows)}};
}

int cmd_enum(const CommonArgs& args) {
    Stopwatch watch;
    Instance inst = instance_from(args);
    YSet y(inst);
    nlohmann::json payload;
    payload["size"] = y.size();
    nlohmann::json per_alpha = nlohmann::json::array();
    nlohmann::json dims = nlohmann::json::array();
    for (int a = 0; a < inst.n; ++a) {
        per_alpha.push_back(y.slice(a, a).size());
        dims.push_back(y.dim_l(a));
    }
    payload["size_per_alpha"] = per_alpha;
    payload["dim_L"] = dims;
    payload["generators"] = enumerate_generators(inst).size();
    nlohmann::json elems = nlohmann::json::array();
    for (const Index& e : y.elems()) elems.push_back(e.str());
    payload["elements"] = elems;
    Report rep;
    rep.command = "enum";
    rep.instance_echo = instance_json(inst);
    rep.records.push_back(record_of("enum", "index set Y", payload, true, watch.ms()));
    return emit(rep, args);
}

int cmd_normalize(const CommonArgs& args, const std::string& expr_text) {
    Stopwatch watch;
    Instance inst = instance_from(args);
    YSet y(inst);
    return with_field(inst, [&](auto field) {
        Expression e = Expression::parse(expr_text, inst);
        auto form = normalize(e, y, field);
        bool sound = realize(form, y, field) == realize(e, y, field);
        nlohmann::json payload{{"input", expr_text},
                               {"canonical", form.str(field)},
                               {"ideal_level", ideal_level(form, y, field)},
                               {"terms", form.terms.size()},
                               {"matrix_checked", sound}};
        Report rep;
        rep.command = "normalize";
        rep.instance_echo = instance_json(inst);
        rep.records.push_back(record_of("normalize", "canonical form (**)", payload, sound, watch.ms()));
        return emit(rep, args);
    });
}

int cmd_compose(const CommonArgs& args, const std::string& left, const std::string& right) {
    Stopwatch watch;
    Instance inst = instance_from(args);
    YSet y(inst);
    return with_field(inst, [&](auto field) {
        GeneratorSymbol t1 = GeneratorSymbol::parse(left, inst);
        GeneratorSymbol t2 = GeneratorSymbol::parse(right, inst);
        const char* kind = nullptr;
        switch (rule_kind(t1, t2)) {
            case RuleKind::kZero: kind = "I"; break;
            case RuleKind::kMerge: kind = "II"; break;
            case RuleKind::kIrredundant: kind = "III"; break;
        }
        auto form = compose_pair(t1, t2, y, field);
        bool sound = realize(form, y, field) ==
                     mul(generator_matrix(t1, y, field), generator_matrix(t2, y, field));
        nlohmann::json payload{{"left", t1.str()},
                               {"right", t2.str()},
                               {"rule", kind},
                               {"product", form.str(field)},
                               {"matrix_checked", sound}};
        Report rep;
        rep.command = "compose";
        rep.instance_echo = instance_json(inst);
        rep.records.push_back(
            record_of("compose", "product rules (I)-(III)", payload, sound, watch.ms()));
        return emit(rep, args);
    });
}

int cmd_gamma(const CommonArgs& args, int gamma) {
    Stopwatch watch;
    Instance inst = instance_from(args);
    YSet y(inst);
    return with_field(inst, [&](auto field) {
        auto maps = generator_maps(y);
        auto res = gamma_profile(y, maps, gamma, field);
        nlohmann::json certs = nlohmann::json::array();
        for (const auto& c : res.certificates)
            certs.push_back({{"gamma", c.gamma},
                             {"alpha", c.alpha},
                             {"beta", c.beta},
                             {"complemented", c.complemented},
                             {"witness_dim", c.witness ? c.witness->dim() : -1}});
        nlohmann::json payload{{"gamma", gamma},
                               {"e_set", res.profile.e_set},
                               {"valid_range", res.profile.valid_range},
                               {"certificates", certs}};
        Report rep;
        rep.command = "gamma";
        rep.instance_echo = instance_json(inst);
        rep.records.push_back(record_of("gamma_profile", "Proposition 2.4", payload, true, watch.ms()));
        return emit(rep, args);
    });
}

int cmd_complement(const CommonArgs& args, int gamma, int alpha, int beta) {
    Stopwatch watch;
    Instance inst = instance_from(args);
    YSet y(inst);
    return with_field(inst, [&](auto field) {
        auto maps = generator_maps(y);
        Report rep;
        rep.command = "complement";
        rep.instance_echo = instance_json(inst);
        try {
            auto c = inst.s_contains(alpha)
                         ? check_complement_positive(y, maps, gamma, alpha, beta, field)
                         : check_complement_negative(y, gamma, alpha, beta, field);
            bool reverified = verify_complement_report(c, y, maps, field);
            nlohmann::json payload{{"gamma", gamma},
                                   {"alpha", alpha},
                                   {"beta", beta},
                                   {"complemented", c.complemented}};
            // at oracle scale, cross-check the verdict against the full lattice
            if (inst.prime == 2 && y.size() <= inst.caps.max_oracle_dim &&
                y.dim_l(beta) > 0 && y.dim_l(beta) < y.dim_l(alpha)) {
                oracle::MicroLattice lat = oracle::enumerate_lattice(y);
                bool by_oracle = oracle::oracle_complemented(
                    lat, oracle::subspace_l_mask(y, beta), oracle::subspace_l_mask(y, alpha),
                    oracle::subspace_l_mask(y, gamma));
                c.oracle_confirmed = by_oracle == c.complemented;
                reverified = reverified && c.oracle_confirmed;
                payload["oracle_confirmed"] = c.oracle_confirmed;
            }
            payload["reverified"] = reverified;
            if (c.witness) payload["witness"] = subspace_json(*c.witness, field);
            if (!c.complemented) {
                payload["fact_maps_into_next"] = c.maps_into_next;
                payload["fact_hits_gap"] = c.hits_gap;
            }
            rep.records.push_back(
                record_of("complement", "Definition 1.2", payload, reverified, watch.ms()));
        } catch (const CertificateError& e) {
            rep.records.push_back(record_of("complement", "Definition 1.2",
                                            {{"error", e.what()}}, false, watch.ms()));
        }
        return emit(rep, args);
    });
}

int cmd_lattice(const CommonArgs& args) {
    Stopwatch watch;
    Instance inst = instance_from(args);
    YSet y(inst);
    oracle::MicroLattice lat = oracle::enumerate_lattice(y);
    nlohmann::json payload{{"ambient", lat.ambient},
                           {"size", lat.elems.size()},
                           {"cyclic_closures", lat.cyclic_count}};
    nlohmann::json chain = nlohmann::json::array();
    for (int a = 0; a < inst.n; ++a)
        chain.push_back({{"alpha", a},
                         {"dim", y.dim_l(a)},
                         {"in_lattice", lat.has(oracle::subspace_l_mask(y, a))}});
    payload["chain"] = chain;
    Report rep;
    rep.command = "lattice";
    rep.instance_echo = instance_json(inst);
    rep.records.push_back(record_of("lattice", "Definition 1.2", payload, true, watch.ms()));
    return emit(rep, args);
}

int cmd_endo(const CommonArgs& args, int alpha) {
    Stopwatch watch;
    Instance inst = instance_from(args);
    YSet y(inst);
    return with_field(inst, [&](auto field) {
        auto maps = generator_maps(y);
        int dim = centralizer_dim(y, maps, alpha, field);
        nlohmann::json payload{{"alpha", alpha},
                               {"dim", dim},
                               {"expected_full_module_value", 1},
                               {"finding", dim != 1}};
        Report rep;
        rep.command = "endo";
        rep.instance_echo = instance_json(inst);
        CheckRecord rec = record_of("endo", "Lemma 2.5", payload, true, watch.ms());
        if (dim != 1) rec.status = Status::kFinding;
        rep.records.push_back(std::move(rec));
        return emit(rep, args);
    });
}

int cmd_regular(const CommonArgs& args, const std::string& expr_text) {
    Stopwatch watch;
    Instance inst = instance_from(args);
    YSet y(inst);
    return with_field(inst, [&](auto field) {
        auto maps = generator_maps(y);
        auto algebra = algebra_basis(y, maps, field);
        auto form = normalize(Expression::parse(expr_text, inst), y, field);
        bool exists = pseudo_inverse_exists(algebra, realize(form, y, field), field);
        nlohmann::json payload{{"element", form.str(field)},
                               {"algebra_dim", algebra.span.dim()},
                               {"pseudo_inverse_exists", exists}};
        Report rep;
        rep.command = "regular";
        rep.instance_echo = instance_json(inst);
        rep.records.push_back(record_of("regular", "Lemma 3.2", payload, true, watch.ms()));
        return emit(rep, args);
    });
}

int cmd_distrib(const CommonArgs& args, int alpha, int beta1, int beta2) {
    Stopwatch watch;
    Instance inst = instance_from(args);
    YSet y(inst);
    return with_field(inst, [&](auto field) {
        auto maps = generator_maps(y);
        if (beta1 < 0) beta1 = alpha + 2;
        if (beta2 < 0) beta2 = alpha + 3;
        DistributivityReport r = distributivity_refutation(y, maps, alpha, beta1, beta2, field);
        nlohmann::json payload{{"alpha", r.alpha},
                               {"beta1", r.beta1},
                               {"beta2", r.beta2},
                               {"refuted", r.refuted},
                               {"lhs_dim", r.lhs_dim},
                               {"rhs_dim", r.rhs_dim}};
        Report rep;
        rep.command = "distrib";
        rep.instance_echo = instance_json(inst);
        rep.records.push_back(record_of("distrib", "Lemma 3.2", payload, r.refuted, watch.ms()));
        return emit(rep, args);
    });
}

int cmd_ideal(const CommonArgs& args, int alpha, int beta, const std::string& r_text) {
    Stopwatch watch;
    Instance inst = instance_from(args);
    YSet y(inst);
    return with_field(inst, [&](auto field) {
        auto maps = generator_maps(y);
        Report rep;
        rep.command = "ideal";
        rep.instance_echo = instance_json(inst);
        if (r_text.empty()) {
            auto algebra = algebra_basis(y, maps, field);
            auto comp = ideal_I(y, maps, algebra, alpha, field);
            nlohmann::json payload{{"alpha", alpha},
                                   {"algebra_dim", algebra.span.dim()},
                                   {"dim_by_image", comp.by_image.span.dim()},
                                   {"dim_by_generators", comp.by_generators.span.dim()},
                                   {"routes_agree", comp.agree}};
            rep.records.push_back(record_of("ideal_I", "Lemma 3.4", payload, comp.agree, watch.ms()));
        } else {
            auto form = normalize(Expression::parse(r_text, inst), y, field);
            if (beta >= 0) {
                NoncomplementStep step = ideal_noncomplement_step(y, alpha, beta, form, field);
                nlohmann::json payload{{"alpha", alpha},
                                       {"beta", beta},
                                       {"r", form.str(field)},
                                       {"truncation_exhausted", step.truncation_exhausted},
                                       {"gamma", step.gamma},
                                       {"s", step.s_symbol},
                                       {"s_in_I_alpha", step.s_in_lower},
                                       {"s_outside_I_beta", step.s_out_upper},
                                       {"s_times_r_zero", step.product_zero}};
                CheckRecord rec = record_of("ideal_noncomplement_step", "Lemma 3.6", payload,
                                            step.truncation_exhausted || step.ok(),
                                            watch.ms());
                if (step.truncation_exhausted) rec.status = Status::kSkipped;
                rep.records.push_back(std::move(rec));
            } else {
                auto cl = two_sided_closure(y, maps, form, field);
                nlohmann::json payload{{"r", form.str(field)},
                                       {"ideal_dim", cl.ideal.span.dim()},
                                       {"contains_generator", cl.contains_generator}};
                if (cl.witness) payload["generator_witness"] = cl.witness->str();
                rep.records.push_back(record_of("ideal_rrr", "Lemma 3.5", payload,
                                                cl.contains_generator, watch.ms()));
            }
        }
        return emit(rep, args);
    });
}

int cmd_verify(const CommonArgs& args, const std::vector<std::string>& extras) {
    VerifyOptions opts;
    opts.seed = args.seed;
    for (const std::string& item : extras) {
        // "n:s:p", e.g. "6:0,2,4:5"
        auto c1 = item.find(':');
        auto c2 = item.find(':', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw ConfigError("bad --also instance '" + item + "', want n:s:p");
        opts.extras.push_back(Instance::make(
            std::stoi(item.substr(0, c1)), parse_int_list(item.substr(c1 + 1, c2 - c1 - 1)),
            static_cast<std::uint32_t>(std::stoi(item.substr(c2 + 1)))));
    }
    Report rep = run_verify(opts);
    return emit(rep, args);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite verifier for a strongly uniform module construction"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string expr_text, left, right, r_text;
    int gamma = 0, alpha = 0, beta = -1, beta1 = -1, beta2 = -1;
    std::vector<std::string> extras;

    CLI::App* c_enum = app.add_subcommand("enum", "index set, dimensions, generators");
    add_common(c_enum, args, true);

    CLI::App* c_norm = app.add_subcommand("normalize", "expression -> canonical form");
    add_common(c_norm, args, true);
    c_norm->add_option("--expr", expr_text, "operator expression")->required();

    CLI::App* c_comp = app.add_subcommand("compose", "product rule for one generator pair");
    add_common(c_comp, args, true);
    c_comp->add_option("--left", left, "left generator, e.g. T[0,1->2,3]")->required();
    c_comp->add_option("--right", right, "right generator")->required();

    CLI::App* c_gamma = app.add_subcommand("gamma", "finite Gamma-profile of L_gamma");
    add_common(c_gamma, args, true);
    c_gamma->add_option("--gamma", gamma, "chain start");

    CLI::App* c_complement = app.add_subcommand("complement", "single certificate");
    add_common(c_complement, args, true);
    c_complement->add_option("--gamma", gamma)->required();
    c_complement->add_option("--alpha", alpha)->required();
    c_complement->add_option("--beta", beta)->required();

    CLI::App* c_lattice = app.add_subcommand("lattice", "brute-force submodule lattice");
    add_common(c_lattice, args, true);

    CLI::App* c_endo = app.add_subcommand("endo", "commutant dimension on L_alpha");
    add_common(c_endo, args, true);
    c_endo->add_option("--alpha", alpha);

    CLI::App* c_regular = app.add_subcommand("regular", "pseudo-inverse solvability");
    add_common(c_regular, args, true);
    c_regular->add_option("--expr", expr_text, "element of the algebra")->required();

    CLI::App* c_distrib = app.add_subcommand("distrib", "distributivity refutation");
    add_common(c_distrib, args, true);
    c_distrib->add_option("--alpha", alpha);
    c_distrib->add_option("--beta1", beta1);
    c_distrib->add_option("--beta2", beta2);

    CLI::App* c_ideal = app.add_subcommand("ideal", "ideal chain, RrR, non-complement step");
    add_common(c_ideal, args, true);
    c_ideal->add_option("--alpha", alpha);
    c_ideal->add_option("--beta", beta);
    c_ideal->add_option("--r", r_text, "element r in canonical-form syntax");

    CLI::App* c_verify = app.add_subcommand("verify", "run the full acceptance battery");
    add_common(c_verify, args, false);
    c_verify->add_option("--also", extras,
                         "extra sweep instance n:s:p (repeatable), e.g. 6:0,2,4:5");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (CLI::App* sub : app.get_subcommands()) apply_config(sub, args);
        if (c_enum->parsed()) return cmd_enum(args);
        if (c_norm->parsed()) return cmd_normalize(args, expr_text);
        if (c_comp->parsed()) return cmd_compose(args, left, right);
        if (c_gamma->parsed()) return cmd_gamma(args, gamma);
        if (c_complement->parsed()) return cmd_complement(args, gamma, alpha, beta);
        if (c_lattice->parsed()) return cmd_lattice(args);
        if (c_endo->parsed()) return cmd_endo(args, alpha);
        if (c_regular->parsed()) return cmd_regular(args, expr_text);
        if (c_distrib->parsed()) return cmd_distrib(args, alpha, beta1, beta2);
        if (c_ideal->parsed()) return cmd_ideal(args, alpha, beta, r_text);
        if (c_verify->parsed()) return cmd_verify(args, extras);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidIndexError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
