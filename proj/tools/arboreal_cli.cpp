#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "arboreal/corpus.hpp"
#include "arboreal/serialize.hpp"

using namespace arboreal;

namespace {

constexpr const char* kVersion = "0.1.0";

struct FieldOpts {
    bool wild = false, tame = false, real = false;
    long p = 0, e = 1, ell = 0, k = 2;
    bool mu = false, infinite_residue = false;

    GroundField build() const {
        require(wild != tame, "choose exactly one of --wild or --tame");
        if (wild) {
            require(ell == 0 || ell == p, "--ell must equal -p in wild mode");
            return GroundField::wild(p, e, mu, !infinite_residue);
        }
        require(ell >= 2, "--tame needs --ell");
        require(e == 1, "-e only applies in wild mode");
        return GroundField::tame(ell, p, mu, !infinite_residue);
    }
};

void add_field_opts(CLI::App* sub, FieldOpts& f, bool allow_real) {
    auto* w = sub->add_flag("--wild", f.wild, "ell = p over a p-adic field");
    auto* t = sub->add_flag("--tame", f.tame, "ell prime to the residue characteristic");
    w->excludes(t);
    if (allow_real) {
        auto* r = sub->add_flag("--real", f.real, "K = R, f(z) = z^k - c");
        r->excludes(w)->excludes(t);
        sub->add_option("-k", f.k, "exponent in the real case")->check(CLI::Range(2L, 64L));
    }
    sub->add_option("-p", f.p, "residue characteristic (0 allowed when tame)");
    sub->add_option("-e", f.e, "absolute ramification index")->check(CLI::PositiveNumber);
    sub->add_option("--ell", f.ell, "degree of f");
    sub->add_flag("--mu", f.mu, "K contains the ell-th roots of unity");
    sub->add_flag("--infinite-residue", f.infinite_residue, "residue field is infinite");
}

struct CapOpts {
    long degree = 256, resultant = 256, precision = 4096;

    OracleConfig build() const { return {degree, resultant, precision}; }
};

void add_cap_opts(CLI::App* sub, CapOpts& c) {
    sub->add_option("--degree-cap", c.degree, "largest iterate degree")
        ->envname("ARBOREAL_DEGREE_CAP")
        ->check(CLI::PositiveNumber);
    sub->add_option("--resultant-cap", c.resultant, "largest deg^2 for the difference resultant")
        ->envname("ARBOREAL_RESULTANT_CAP")
        ->check(CLI::PositiveNumber);
    sub->add_option("--precision-cap", c.precision, "largest interval precision in bits")
        ->envname("ARBOREAL_PRECISION_CAP")
        ->check(CLI::PositiveNumber);
}

// Valuations come either directly or from the values of c and a.
struct ValOpts {
    std::string vc, va, c, a;

    std::pair<Rat, ValExt> resolve(const GroundField& gf) const {
        require(!(vc.empty() && c.empty()), "give --vc or -c");
        require(!(va.empty() && a.empty()), "give --va or -a");
        require(gf.p != 0 || (!vc.empty() && !va.empty()), "p = 0: give valuations directly");
        const Integer P(gf.p);
        const ValExt vcv = vc.empty() ? padic_val(parse_rat(c), P) : parse_val(vc);
        require(vcv.is_finite(), "c must be nonzero");
        const ValExt vav = va.empty() ? padic_val(parse_rat(a), P) : parse_val(va);
        return {vcv.value(), vav};
    }
};

void add_val_opts(CLI::App* sub, ValOpts& v) {
    sub->add_option("--vc", v.vc, "v(c) as num/den");
    sub->add_option("--va", v.va, "v(a) as num/den or inf");
    sub->add_option("-c", v.c, "c as num/den");
    sub->add_option("-a", v.a, "a as num/den");
}

json field_json(const GroundField& gf) {
    json j;
    j["mode"] = gf.is_wild() ? "wild" : "tame";
    j["p"] = gf.p;
    j["ell"] = gf.ell;
    j["e"] = gf.e;
    return j;
}

json level_json(const LevelVal& l) { return {{"value", to_string(l.value)}, {"exact", l.exact}}; }

json tree_report(const GroundField& gf, const Rat& vc, const ValExt& va, long depth) {
    json out;
    out["field"] = field_json(gf);
    out["vc"] = to_string(vc);
    out["va"] = to_string(va);
    const auto orbit = val_orbit(va, vc, gf, depth);
    json levels = json::array();
    for (const auto& l : orbit.levels) levels.push_back(level_json(l));
    out["levels"] = levels;
    out["stabilization_level"] = orbit.stabilization_level ? json(*orbit.stabilization_level) : json(nullptr);
    out["indeterminate_at"] = orbit.indeterminate_at ? json(*orbit.indeterminate_at) : json(nullptr);

    const ValExt vc_over_ell(Rat(vc / gf.ell));
    if (gf.is_wild() && vc < nu_infinity(gf) && va >= vc_over_ell) {
        const auto qs = q_sequence(vc, va, gf, depth);
        json q = json::array();
        for (const auto& t : qs) q.push_back({{"value", to_string(t.value)}, {"exact", t.exact}, {"additive", t.additive}});
        out["q_sequence"] = q;
        const auto sw = additive_switch_index(qs);
        out["switch_index"] = sw ? json(*sw) : json(nullptr);
        out["cutoff"] = to_json_value(cutoff_level(vc, va, gf));
        if (va > ValExt(vc)) {
            json parts = json::array();
            for (long n = 1; n <= depth; ++n) {
                const auto cp = class_partition_prediction(vc, gf, n);
                parts.push_back({{"level", n},
                                 {"delta", to_string(cp.delta)},
                                 {"class_count", cp.class_count.get_str()},
                                 {"class_size", cp.class_size.get_str()},
                                 {"cross_pairs", cp.cross_pairs.get_str()},
                                 {"within_pairs", cp.within_pairs.get_str()}});
            }
            out["class_partition"] = parts;
        }
    }
    if (const auto reg = dn_regime(vc, va, gf)) {
        out["dn_regime"] = to_string(*reg);
        json d = json::array();
        for (const auto& x : dn_sequence(vc, va, gf, depth)) d.push_back(to_string(x));
        out["dn_sequence"] = d;
    }
    return out;
}

json degree_json(const DegreeGrowthBound& b) {
    json steps = json::array();
    for (const auto& s : b.per_step) steps.push_back({{"m", s.m}, {"p_exponent", s.p_exponent.get_str()}});
    return {{"trivial_bound", b.trivial_bound.get_str()},
            {"trivial_bound_symbolic", b.trivial_bound_symbolic},
            {"r", b.r},
            {"exponent", to_string(b.exponent)},
            {"m0", b.m0},
            {"per_step", steps}};
}

std::vector<int> parse_signs(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "1" || tok == "+1" || tok == "+") out.push_back(1);
        else if (tok == "-1" || tok == "-") out.push_back(-1);
        else throw precondition_error("sgn: targets are comma-separated +1/-1, got '" + tok + "'");
    }
    require(!out.empty(), "sgn: empty target");
    return out;
}

json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw precondition_error(what + ": malformed JSON: " + e.what());
    }
}

// Flags from a --config file are appended after the command-line ones, so
// anything given explicitly wins.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    require(static_cast<bool>(in), "config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const json cfg = parse_json_text(buf.str(), "config");
    require(cfg.is_object(), "config: top level must be an object");

    if (args.size() == 1) {
        require(cfg.contains("command") && cfg["command"].is_string(), "config: no subcommand given");
        args.push_back(cfg["command"].get<std::string>());
    }
    auto given = [&](const std::string& flag) {
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    auto scalar = [](const json& v) {
        if (v.is_string()) return v.get<std::string>();
        require(v.is_number_integer(), "config: values must be strings, integers or booleans");
        return std::to_string(v.get<long>());
    };
    for (const auto& [key, value] : cfg.items()) {
        if (key == "command") continue;
        const std::string flag = (key.size() == 1 ? "-" : "--") + key;
        if (given(flag)) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back(flag);
        } else if (value.is_array()) {
            for (const auto& v : value) {
                args.push_back(flag);
                args.push_back(scalar(v));
            }
        } else {
            args.push_back(flag);
            args.push_back(scalar(value));
        }
    }
    return args;
}

void emit(const json& envelope, const std::string& output) {
    const std::string text = envelope.dump(2) + "\n";
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output);
    require(static_cast<bool>(out), "cannot write " + output);
    out << text;
}

json error_envelope(const std::string& command, const std::string& kind, const std::string& message) {
    json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["error"] = {{"kind", kind}, {"message", message}};
    return j;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string command;
    std::string output;

    CLI::App app{"Galois towers of z^ell - c over local fields"};
    app.require_subcommand(1);
    app.add_option("-o,--output", output, "write JSON here instead of standard output");
    app.set_version_flag("--version", kVersion);

    FieldOpts field;
    ValOpts vals;
    CapOpts caps;

    // classify
    auto* classify = app.add_subcommand("classify", "regime verdict with shape tags");
    add_field_opts(classify, field, true);
    add_val_opts(classify, vals);
    std::optional<long> r_opt;
    std::string vb, va_minus_b;
    bool b_in_K = false, require_inertia = false;
    std::optional<long> degree_level;
    classify->add_option("--r", r_opt, "p-divisibility of v(c) in the value group (checked)");
    classify->add_option("--vb", vb, "v(b) for a fixed point b of f");
    classify->add_option("--va-minus-b", va_minus_b, "v(a - b)");
    classify->add_flag("--b-in-K", b_in_K, "the fixed point b lies in K");
    classify->add_flag("--require-inertia", require_inertia, "fail unless the inertia verdict can be given");
    classify->add_option("--degree-level", degree_level, "also bound [K_n : K] for this n")->check(CLI::PositiveNumber);

    // tree
    auto* tree = app.add_subcommand("tree", "valuation tree simulation");
    add_field_opts(tree, field, false);
    add_val_opts(tree, vals);
    long depth = 4;
    tree->add_option("--depth", depth, "levels to follow")->check(CLI::Range(1L, 4096L));

    // oracle
    auto* oracle = app.add_subcommand("oracle", "check predictions against expanded iterates");
    add_field_opts(oracle, field, false);
    add_cap_opts(oracle, caps);
    std::string c_str, a_str, corpus;
    long level = 0;
    bool all_levels = false;
    oracle->add_option("-c", c_str, "c as num/den");
    oracle->add_option("-a", a_str, "a as num/den");
    oracle->add_option("-n", level, "level")->check(CLI::PositiveNumber);
    oracle->add_flag("--all-levels", all_levels, "check every level 1..n");
    oracle->add_option("--corpus", corpus, "JSON-lines regression file");

    // real
    auto* real = app.add_subcommand("real", "K = R: are all iterated preimages real?");
    long real_k = 2;
    std::optional<long> real_depth;
    real->add_option("-k", real_k, "exponent")->check(CLI::Range(2L, 64L));
    real->add_option("-c", c_str, "c as num/den")->required();
    real->add_option("-a", a_str, "a as num/den")->required();
    real->add_option("--depth", real_depth, "also run the interval tree check")->check(CLI::Range(1L, 64L));
    add_cap_opts(real, caps);

    // filtration
    auto* filtration = app.add_subcommand("filtration", "Herbrand transport of ramification filtrations");
    std::string breaks;
    bool upper_given = false;
    std::vector<std::string> phi_at, psi_at;
    filtration->add_option("--breaks", breaks, "[{\"u\": \"0\", \"order\": 4}, ...]")->required();
    filtration->add_flag("--upper", upper_given, "breaks are in upper numbering");
    filtration->add_option("--phi", phi_at, "evaluate phi here");
    filtration->add_option("--psi", psi_at, "evaluate psi here");

    // sgn
    auto* sgn = app.add_subcommand("sgn", "level signs of tree automorphisms");
    long sgn_ell = 2;
    std::string target;
    std::optional<long> random_height;
    unsigned long seed = 1;
    sgn->add_option("--ell", sgn_ell, "branching")->check(CLI::Range(2L, 8L));
    auto* tgt = sgn->add_option("--target", target, "comma-separated +1/-1 per level");
    auto* rnd = sgn->add_option("--random", random_height, "random automorphism of this height")
                    ->check(CLI::Range(1L, 10L));
    sgn->add_option("--seed", seed, "seed for --random");
    tgt->excludes(rnd);

    // residue
    auto* residue = app.add_subcommand("residue", "orbit of 0 mod p and the tame verdict");
    long res_ell = 2, res_p = 0;
    residue->add_option("--ell", res_ell, "degree of f")->check(CLI::Range(2L, 64L));
    residue->add_option("-p", res_p, "residue characteristic")->required();
    residue->add_option("-c", c_str, "c as num/den, p-integral")->required();
    residue->add_option("-a", a_str, "a as num/den, p-integral")->required();

    for (const auto& a : args)
        for (const auto* sub : app.get_subcommands({}))
            if (command.empty() && a == sub->get_name()) command = a;

    try {
        args = expand_config(std::move(args));
        std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        std::cout << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cout << error_envelope(command, "usage", e.what()).dump(2) << "\n";
        return 2;
    } catch (const precondition_error& e) {
        std::cout << error_envelope(command, "precondition", e.what()).dump(2) << "\n";
        return 2;
    }

    command = app.get_subcommands().front()->get_name();
    int status = 0;
    try {
        json result;
        if (command == "classify") {
            if (field.real) {
                require(vals.vc.empty() && vals.va.empty(), "--real takes values -c and -a, not valuations");
                require(!vals.c.empty() && !vals.a.empty(), "--real needs -c and -a");
                result["verdict"] = to_string(classify_real(field.k, parse_rat(vals.c), parse_rat(vals.a)));
            } else {
                const auto gf = field.build();
                const auto [vc, va] = vals.resolve(gf);
                if (gf.is_wild()) {
                    WildInput in{vc, va, r_opt, std::nullopt, require_inertia};
                    require(vb.empty() == va_minus_b.empty(), "--vb and --va-minus-b go together");
                    if (!vb.empty()) in.fixed_point = FixedPointData{parse_rat(vb), parse_val(va_minus_b), b_in_K};
                    result = to_json_value(classify_wild(gf, in));
                    if (degree_level) result["degree_growth"] = degree_json(degree_growth_bound(gf, vc, va, *degree_level));
                } else {
                    std::optional<ResidueReport> rep;
                    if (vc >= 0 && va >= ValExt(Rat(0)) && !vals.c.empty() && !vals.a.empty())
                        rep = residue_report(gf.ell, parse_rat(vals.c), parse_rat(vals.a), gf.p);
                    result = to_json_value(classify_tame(gf, vc, va, rep));
                    if (rep) result["residue"] = to_json_value(*rep, FiniteField(gf.p));
                }
            }
        } else if (command == "tree") {
            const auto gf = field.build();
            const auto [vc, va] = vals.resolve(gf);
            result = tree_report(gf, vc, va, depth);
        } else if (command == "oracle") {
            const auto cfg = caps.build();
            if (!corpus.empty()) {
                require(c_str.empty() && a_str.empty() && level == 0, "--corpus runs alone");
                std::ifstream in(corpus);
                require(static_cast<bool>(in), "cannot open corpus " + corpus);
                const auto outcomes = run_corpus(in, cfg);
                json rows = json::array();
                std::size_t failed = 0;
                for (const auto& o : outcomes) {
                    rows.push_back({{"line", o.line}, {"passed", o.passed}, {"observed", o.observed}});
                    failed += !o.passed;
                }
                result["instances"] = rows;
                result["passed"] = outcomes.size() - failed;
                result["failed"] = failed;
                if (failed) status = 1;
            } else {
                require(!c_str.empty() && !a_str.empty() && level > 0, "oracle needs -c, -a and -n");
                const auto gf = field.build();
                const Rat c = parse_rat(c_str), a = parse_rat(a_str);
                if (all_levels) {
                    json rows = json::array();
                    bool ok = true;
                    for (const auto& r : verify_levels(gf, c, a, level, cfg)) {
                        ok = ok && r.agreement;
                        rows.push_back(to_json_value(r));
                    }
                    result["agreement"] = ok;
                    result["levels"] = rows;
                } else {
                    result = to_json_value(verify_predictions(gf, c, a, level, cfg));
                }
            }
        } else if (command == "real") {
            const Rat c = parse_rat(c_str), a = parse_rat(a_str);
            result["verdict"] = to_string(classify_real(real_k, c, a));
            if (real_depth) result["tree_check"] = to_json_value(real_all_real_check(real_k, c, a, *real_depth, 32, caps.build()));
        } else if (command == "filtration") {
            const auto given = filtration_from_json(parse_json_text(breaks, "--breaks"));
            const auto lower = upper_given ? lower_order_function(given) : given;
            const auto upper = upper_given ? given : upper_order_function(lower);
            result["lower"] = to_json_value(lower);
            result["upper"] = to_json_value(upper);
            json phi = json::object(), psi = json::object();
            std::vector<Rat> samples;
            for (const auto& s : phi_at) {
                const Rat u = parse_rat(s);
                samples.push_back(u);
                phi[to_string(u)] = to_string(herbrand_phi(lower, u));
            }
            for (const auto& s : psi_at) {
                const Rat w = parse_rat(s);
                psi[to_string(w)] = to_string(herbrand_psi(lower, w));
            }
            for (const auto& b : lower.breaks()) samples.push_back(b.u + 1);
            result["phi"] = phi;
            result["psi"] = psi;
            const auto check = phi_leq_identity_check(lower, samples);
            result["phi_leq_identity"] = check.holds;
        } else if (command == "sgn") {
            TreeAut aut(static_cast<std::size_t>(sgn_ell), 1);
            if (random_height) {
                std::mt19937_64 rng(seed);
                aut = random_tree_aut(static_cast<std::size_t>(sgn_ell), static_cast<std::size_t>(*random_height), rng);
            } else {
                require(!target.empty(), "sgn needs --target or --random");
                aut = sign_preimage(static_cast<std::size_t>(sgn_ell), parse_signs(target));
            }
            result["ell"] = sgn_ell;
            result["automorphism"] = to_json_value(aut);
            result["sgn"] = sgn_vector(aut);
        } else if (command == "residue") {
            const Rat c = parse_rat(c_str), a = parse_rat(a_str);
            const auto rep = residue_report(res_ell, c, a, res_p);
            result = to_json_value(rep, FiniteField(res_p));
            result["case"] = to_string(tame_verdict(rep));
        }
        json envelope;
        envelope["command"] = command;
        envelope["version"] = kVersion;
        envelope["result"] = result;
        emit(envelope, output);
        return status;
    } catch (const precondition_error& e) {
        std::cout << error_envelope(command, "precondition", e.what()).dump(2) << "\n";
        return 2;
    } catch (const indeterminate_regime& e) {
        std::cout << error_envelope(command, "indeterminate_regime", e.what()).dump(2) << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cout << error_envelope(command, "precondition", e.what()).dump(2) << "\n";
        return 2;
    } catch (const cap_exceeded& e) {
        std::cout << error_envelope(command, "cap_exceeded", e.what()).dump(2) << "\n";
        return 3;
    }
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
