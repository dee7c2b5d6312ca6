#pragma once

// Command-line front end.  Each command parses its inputs, calls one library
// routine and prints deterministic JSON on stdout.  Validation failures
// print {"error": {...}} on stderr and return 1; internal invariant
// failures return 2.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cascade.hpp"
#include "centgen.hpp"
#include "coadj.hpp"
#include "criterion.hpp"
#include "envalg.hpp"
#include "error.hpp"
#include "json_io.hpp"
#include "liealg.hpp"
#include "linear_form.hpp"
#include "rootsys.hpp"
#include "symalg.hpp"

namespace nilcascade::cli {

using nlohmann::json;

inline json load_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ValidationError("io", "cannot read file", file);
    std::stringstream ss;
    ss << in.rdbuf();
    return json_io::parse_text(ss.str(), file);
}

/// "a..b" or a comma-separated list of indices.
inline std::set<int> parse_window(const std::string& spec) {
    auto bad = [&] { return ValidationError("bad_window", "window must look like '1..N' or '1,3,5': '" + spec + "'", "--window"); };
    auto num = [&](const std::string& s) {
        if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) throw bad();
        int v = std::stoi(s);
        if (v < 1) throw bad();
        return v;
    };
    std::set<int> out;
    auto dots = spec.find("..");
    if (dots != std::string::npos) {
        int a = num(spec.substr(0, dots)), b = num(spec.substr(dots + 2));
        if (b < a || b - a > 4096) throw bad();
        for (int k = a; k <= b; ++k) out.insert(k);
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!out.insert(num(item)).second) throw bad();
    if (out.empty()) throw bad();
    return out;
}

/// Plain-text rendering of a JSON document.
inline void render_table(const json& j, std::ostream& out, int indent = 0) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (auto& [k, v] : j.items()) {
            if (v.is_structured() && !v.empty()) {
                out << pad << k << ":\n";
                render_table(v, out, indent + 2);
            } else {
                out << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (auto& v : j) {
            if (v.is_structured() && !v.empty()) {
                out << pad << "-\n";
                render_table(v, out, indent + 2);
            } else {
                out << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else {
        out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

struct Inputs {
    std::string order_file, lambda_file, window, pair, beta, poly_file, pbw_file, f_file, g_file, x_file;
    std::string system;
    int rank = 0;
    int heisenberg = 0;
    std::size_t limit = 10, k = 1, max_window = 16;
    bool pretty = false, no_delta = false, symmetrize = false;
};

class Context {
public:
    explicit Context(const Inputs& in) : in_(in) {}

    OrderSpec order() const {
        if (in_.order_file.empty()) throw ValidationError("usage", "--order is required", "--order");
        json j = load_file(in_.order_file);
        return json_io::parse_order(json_io::Node(j, in_.order_file + "#"));
    }

    LinearForm lambda(const OrderSpec& o) const {
        if (in_.lambda_file.empty()) throw ValidationError("usage", "--lambda is required", "--lambda");
        json j = load_file(in_.lambda_file);
        return json_io::parse_linear_form(json_io::Node(j, in_.lambda_file + "#"), o);
    }

    std::set<int> window() const {
        if (in_.window.empty()) throw ValidationError("usage", "--window is required", "--window");
        return parse_window(in_.window);
    }

    /// n_M for --order/--window, or hei_N for --heisenberg N.
    NilAlgebra algebra() const {
        if (in_.heisenberg > 0) return NilAlgebra::heisenberg(in_.heisenberg);
        auto o = order();
        return NilAlgebra(Window(o, window()));
    }

    /// The order that names λ's roots: the algebra's own for Heisenberg.
    OrderSpec lambda_order() const {
        if (in_.heisenberg > 0) return OrderSpec::finite(SystemType::A, in_.heisenberg + 2);
        return order();
    }

    SymPoly poly(const std::string& file, const std::string& flag) const {
        if (file.empty()) throw ValidationError("usage", flag + " is required", flag);
        json j = load_file(file);
        return json_io::parse_poly(json_io::Node(j, file + "#"));
    }

    LieVector lie(const std::string& file, const std::string& flag) const {
        if (file.empty()) throw ValidationError("usage", flag + " is required", flag);
        json j = load_file(file);
        return json_io::parse_lie_vector(json_io::Node(j, file + "#"));
    }

    PbwElement pbw(const Enveloping& u) const {
        json j = load_file(in_.pbw_file);
        return json_io::parse_pbw(json_io::Node(j, in_.pbw_file + "#"), u);
    }

    UpperRightPair pair() const {
        if (in_.pair.empty()) throw ValidationError("usage", "--pair is required", "--pair");
        auto o = order();
        try {
            auto p = parse_pair(in_.pair);
            validate_pair(p, o);
            return p;
        } catch (const ValidationError& e) {
            throw e.with_path("--pair");
        }
    }

    const Inputs& in() const { return in_; }

private:
    const Inputs& in_;
};

inline json window_json(const Window& w) { return w.indices(); }

inline void require_in_algebra(const NilAlgebra& alg, const SymPoly& f, const std::string& flag) {
    for (auto& r : f.variables())
        if (!alg.index_of(r)) throw ValidationError("not_in_algebra", to_string(r) + " is not a basis root of the window", flag);
}

inline json cmd_cascade(const Context& cx) {
    const auto& in = cx.in();
    if (!in.system.empty()) {
        if (!in.order_file.empty()) throw ValidationError("usage", "use either --order or --system/--rank", "--system");
        auto roots = finite_cascade(parse_system(in.system), in.rank);
        return {{"system", in.system}, {"rank", in.rank}, {"cascade", json_io::roots_to_json(roots)}};
    }
    auto res = cascade(cx.order(), in.limit);
    json windows = json::array();
    for (auto& w : res.windows) windows.push_back(std::vector<int>(w.begin(), w.end()));
    return {{"cascade", json_io::roots_to_json(res.roots)}, {"terminated", res.terminated}, {"windows", windows}};
}

inline json cmd_central_gen(const Context& cx) {
    auto o = cx.order();
    if (cx.in().beta.empty()) throw ValidationError("usage", "--beta is required", "--beta");
    Root beta = [&] {
        try {
            return parse_root(cx.in().beta);
        } catch (const ValidationError& e) {
            throw e.with_path("--beta");
        }
    }();
    auto g = canonical_generator(beta, o, !cx.in().no_delta);
    json out = {{"beta", to_string(beta)}, {"k", g.position}, {"window", std::vector<int>(g.window.begin(), g.window.end())},
                {"xi", json_io::to_json(g.xi)}, {"degree", g.xi.degree()}};
    if (g.delta) out["delta"] = json_io::to_json(*g.delta, NilAlgebra(Window(o, g.window)));
    return out;
}

inline json cmd_check_central(const Context& cx) {
    auto alg = cx.algebra();
    auto f = cx.poly(cx.in().poly_file, "--poly");
    require_in_algebra(alg, f, "--poly");
    for (std::size_t k = 0; k < alg.dim(); ++k) {
        auto b = poisson_bracket(f, SymPoly::var(alg.root(k)), alg);
        if (!b.is_zero()) return {{"central", false}, {"witness", alg.label(k)}, {"bracket", json_io::to_json(b)}};
    }
    return {{"central", true}};
}

inline json cmd_pbw_central(const Context& cx) {
    auto alg = cx.algebra();
    Enveloping u(alg);
    PbwElement elem;
    if (!cx.in().poly_file.empty()) {
        auto f = cx.poly(cx.in().poly_file, "--poly");
        require_in_algebra(alg, f, "--poly");
        elem = u.symmetrize(f);
    } else if (!cx.in().pbw_file.empty()) {
        elem = cx.pbw(u);
    } else {
        throw ValidationError("usage", "pass --poly (symmetrized) or --pbw", "--pbw");
    }
    auto res = u.is_central(elem);
    json out = {{"central", res.central}, {"element", json_io::to_json(elem, alg)}};
    if (!res.central) {
        out["witness"] = alg.label(*res.witness);
        out["commutator"] = json_io::to_json(res.commutator, alg);
    }
    return out;
}

inline json cmd_poisson_bracket(const Context& cx) {
    auto alg = cx.algebra();
    auto f = cx.poly(cx.in().f_file, "--f");
    auto g = cx.poly(cx.in().g_file, "--g");
    require_in_algebra(alg, f, "--f");
    require_in_algebra(alg, g, "--g");
    return {{"bracket", json_io::to_json(poisson_bracket(f, g, alg))}};
}

inline json basis_json(const NilAlgebra& alg, const std::vector<RVec>& vs) {
    json out = json::array();
    for (auto& v : vs) out.push_back(json_io::to_json(alg.to_lie(v)));
    return out;
}

inline json cmd_polarize(const Context& cx) {
    auto alg = cx.algebra();
    auto lam = cx.lambda(cx.lambda_order()).on_basis(alg);
    auto pol = vergne_polarization(alg, lam);
    auto r = beta_rank(alg, lam);
    return {{"dim", alg.dim()}, {"beta_rank", r}, {"polarization_dim", pol.size()},
            {"kernel", basis_json(alg, beta_kernel(alg, lam))}, {"polarization", basis_json(alg, pol)}};
}

inline json cmd_orbit_invariants(const Context& cx) {
    auto o = cx.order();
    Window w(o, cx.window());
    auto inv = orbit_invariants(cx.lambda(o), w);
    json c = json::array(), gens = json::array();
    for (auto& x : inv.c) c.push_back(to_string(x));
    for (auto& g : inv.generators) gens.push_back(json_io::to_json(g));
    json out = {{"window", window_json(w)}, {"c", c}, {"regular", inv.regular}, {"regular_dimension", inv.regular_dimension}};
    if (inv.regular) out["generators"] = gens;
    return out;
}

inline json cmd_coadjoint(const Context& cx) {
    auto alg = cx.algebra();
    auto mu = cx.lambda(cx.lambda_order()).on_basis(alg);
    auto x = alg.to_coords(cx.lie(cx.in().x_file, "--x"));
    auto by_matrix = coadjoint_act_matrix(alg, x, mu);
    auto by_series = coadjoint_act_series(alg, x, mu);
    if (by_matrix != by_series) throw InvariantError("matrix and series coadjoint actions disagree");
    return {{"result", json_io::coords_to_json(alg, by_series)}, {"agree", true},
            {"lower_matrix", json_io::matrix_to_json(coadjoint_matrix(alg, x, mu))}};
}

inline json cmd_ideal_gens(const Context& cx) {
    auto o = cx.order();
    auto res = ideal_generators(cx.pair(), cx.in().k, cx.window(), o);
    json gens = json::array();
    for (auto& g : res.generators) gens.push_back(json_io::to_json(g));
    return {{"pair", to_string(cx.pair())}, {"k", cx.in().k}, {"generators", gens}, {"count", res.generators.size()},
            {"is_zero_ideal", res.is_zero_ideal}};
}

inline json opt_count(const std::optional<std::size_t>& c) { return c ? json(*c) : json("infinite"); }

inline json rank_json(const RankCertificate& c) {
    return {{"not_maximal", c.not_maximal}, {"rank", opt_count(c.rank)}, {"rows", opt_count(c.row_count)},
            {"cols", opt_count(c.col_count)}, {"reason", c.reason}, {"support_rows", c.support.rows},
            {"support_cols", c.support.cols}};
}

inline json cmd_criterion(const Context& cx) {
    auto o = cx.order();
    auto v = nontriviality_verdict(o, cx.lambda(o), cx.in().max_window);
    json out = {{"verdict", to_string(v.kind)}, {"certificate", v.certificate}};
    if (v.cascade_witness) out["witness"] = {{"cascade_root", to_string(*v.cascade_witness)}};
    if (v.pair) out["witness"] = {{"pair", to_string(*v.pair)}, {"k", v.k}, {"rank", rank_json(*v.rank_certificate)}};
    if (v.kind == Verdict::Kind::Undetermined) {
        json rep = json::array();
        for (auto& e : v.window_report)
            rep.push_back({{"size", e.size}, {"window", e.window}, {"pair", to_string(e.pair)}, {"rank", e.rank},
                           {"rows", e.rows}, {"cols", e.cols}});
        out["window_report"] = rep;
    }
    return out;
}

inline json cmd_rank(const Context& cx) {
    auto o = cx.order();
    auto lam = cx.lambda(o);
    auto p = cx.pair();
    if (!cx.in().window.empty()) {
        auto w = cx.window();
        auto sl = window_slice(p, o, w);
        auto m = lambda_matrix(lam, p, o, sl.rows, sl.cols);
        return {{"pair", to_string(p)}, {"rows", sl.rows}, {"cols", sl.cols}, {"matrix", json_io::matrix_to_json(m)},
                {"rank", rank(m)}};
    }
    return {{"pair", to_string(p)}, {"certificate", rank_json(rank_not_maximal(lam, p, o))}};
}

inline void emit_error(std::ostream& err, const std::string& code, const std::string& message, const std::string& path) {
    json e = {{"error", {{"code", code}, {"message", message}, {"path", path}}}};
    err << e.dump() << "\n";
}

/// Entry point; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact orbit-method computations for classical nilpotent and nil-Dynkin Lie algebras", "nilcascade"};
    app.require_subcommand(1);
    Inputs in;
    app.add_flag("--pretty", in.pretty, "Print a plain-text view instead of JSON");

    auto add_order = [&](CLI::App* c) { c->add_option("--order", in.order_file, "Order JSON file"); };
    auto add_window = [&](CLI::App* c) { c->add_option("--window", in.window, "Window '1..N' or 'i,j,k'"); };
    auto add_hei = [&](CLI::App* c) { c->add_option("--heisenberg", in.heisenberg, "Use hei_N instead of --order/--window")->check(CLI::Range(1, 12)); };
    auto add_lambda = [&](CLI::App* c) { c->add_option("--lambda", in.lambda_file, "Linear form JSON file"); };

    std::map<CLI::App*, json (*)(const Context&)> handlers;
    auto sub = [&](const char* name, const char* help, json (*fn)(const Context&)) {
        auto* c = app.add_subcommand(name, help);
        c->add_flag("--pretty", in.pretty, "Print a plain-text view instead of JSON");
        handlers[c] = fn;
        return c;
    };

    auto* c_cascade = sub("cascade", "Kostant cascade of an order, or the finite cascade of a type and rank", cmd_cascade);
    add_order(c_cascade);
    c_cascade->add_option("--limit", in.limit, "Number of roots")->check(CLI::Range(0, 100000));
    c_cascade->add_option("--system", in.system, "Finite type A/B/C/D");
    c_cascade->add_option("--rank", in.rank, "Finite rank (matrix size for A)")->check(CLI::Range(1, 64));

    auto* c_gen = sub("central-gen", "Canonical generator xi_beta and Delta_beta", cmd_central_gen);
    add_order(c_gen);
    c_gen->add_option("--beta", in.beta, "Cascade root");
    c_gen->add_flag("--no-delta", in.no_delta, "Skip symmetrization");

    auto* c_check = sub("check-central", "Poisson centrality of a polynomial in S(n_M)", cmd_check_central);
    add_order(c_check);
    add_window(c_check);
    add_hei(c_check);
    c_check->add_option("--poly", in.poly_file, "Polynomial JSON file");

    auto* c_pbw = sub("pbw-central", "Centrality in U(n_M) of a PBW element or a symmetrized polynomial", cmd_pbw_central);
    add_order(c_pbw);
    add_window(c_pbw);
    add_hei(c_pbw);
    c_pbw->add_option("--pbw", in.pbw_file, "PBW element JSON file");
    c_pbw->add_option("--poly", in.poly_file, "Polynomial JSON file, symmetrized first");

    auto* c_pb = sub("poisson-bracket", "Poisson bracket {f, g}", cmd_poisson_bracket);
    add_order(c_pb);
    add_window(c_pb);
    add_hei(c_pb);
    c_pb->add_option("--f", in.f_file, "Polynomial JSON file");
    c_pb->add_option("--g", in.g_file, "Polynomial JSON file");

    auto* c_pol = sub("polarize", "Vergne polarization and rank of beta_lambda", cmd_polarize);
    add_order(c_pol);
    add_window(c_pol);
    add_hei(c_pol);
    add_lambda(c_pol);

    auto* c_orb = sub("orbit-invariants", "Type A regular-orbit invariants c_i", cmd_orbit_invariants);
    add_order(c_orb);
    add_window(c_orb);
    add_lambda(c_orb);

    auto* c_co = sub("coadjoint", "Coadjoint action of exp(x) on lambda", cmd_coadjoint);
    add_order(c_co);
    add_window(c_co);
    add_hei(c_co);
    add_lambda(c_co);
    c_co->add_option("--x", in.x_file, "Lie vector JSON file");

    auto* c_ideal = sub("ideal-gens", "Window generators of I(p, k)", cmd_ideal_gens);
    add_order(c_ideal);
    add_window(c_ideal);
    c_ideal->add_option("--pair", in.pair, "Upper-right pair '(i,j)', '(i,-i)' or 'maxrow(j)'");
    c_ideal->add_option("--k", in.k, "k")->check(CLI::Range(1, 64));

    auto* c_crit = sub("criterion", "Nontriviality verdict for I(lambda)", cmd_criterion);
    add_order(c_crit);
    add_lambda(c_crit);
    c_crit->add_option("--max-window", in.max_window, "Largest window of the rank ladder")->check(CLI::Range(2, 256));

    auto* c_rank = sub("rank", "Rank of [lambda]_p: not-maximal test, or a window submatrix", cmd_rank);
    add_order(c_rank);
    add_lambda(c_rank);
    add_window(c_rank);
    c_rank->add_option("--pair", in.pair, "Upper-right pair");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        emit_error(err, "usage", e.what(), "");
        return 1;
    }

    try {
        for (auto& [c, fn] : handlers)
            if (c->parsed()) {
                json result = fn(Context(in));
                if (in.pretty) render_table(result, out);
                else out << result.dump() << "\n";
                return 0;
            }
        emit_error(err, "usage", "no command given", "");
        return 1;
    } catch (const ValidationError& e) {
        emit_error(err, e.code(), e.what(), e.path());
        return 1;
    } catch (const InvariantError& e) {
        emit_error(err, "internal", e.what(), "");
        return 2;
    } catch (const std::exception& e) {
        emit_error(err, "internal", e.what(), "");
        return 2;
    }
}

}  // namespace nilcascade::cli
