#pragma once

// JSON encodings of orders, linear forms, polynomials, PBW elements and Lie
// vectors.  Parsing validates the schema and reports the offending path.

#include <initializer_list>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "envalg.hpp"
#include "error.hpp"
#include "liealg.hpp"
#include "linear_form.hpp"
#include "rational.hpp"
#include "rootsys.hpp"
#include "symalg.hpp"

namespace nilcascade::json_io {

using nlohmann::json;

/// A JSON value together with its path, for error reporting.
class Node {
public:
    Node(const json& v, std::string path) : v_(&v), path_(std::move(path)) {}

    const json& value() const { return *v_; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& code, const std::string& msg) const { throw ValidationError(code, msg, path_); }

    /// Rethrow validation errors from a nested parser with this node's path.
    template <class F>
    auto guard(F&& f) const -> decltype(f()) {
        try {
            return f();
        } catch (const ValidationError& e) {
            if (!e.path().empty()) throw;
            throw e.with_path(path_);
        }
    }

    const Node& require_object(std::initializer_list<const char*> allowed) const {
        if (!v_->is_object()) fail("schema", "expected an object");
        std::set<std::string> ok(allowed.begin(), allowed.end());
        for (auto& [k, _] : v_->items())
            if (!ok.count(k)) Node(*v_, path_ + "/" + k).fail("schema", "unknown key '" + k + "'");
        return *this;
    }

    bool has(const char* key) const { return v_->is_object() && v_->contains(key); }

    Node at(const char* key) const {
        if (!v_->is_object() || !v_->contains(key)) fail("schema", std::string("missing key '") + key + "'");
        return Node((*v_)[key], path_ + "/" + key);
    }

    std::vector<Node> elements() const {
        if (!v_->is_array()) fail("schema", "expected an array");
        std::vector<Node> out;
        for (std::size_t k = 0; k < v_->size(); ++k) out.emplace_back((*v_)[k], path_ + "/" + std::to_string(k));
        return out;
    }

    std::string str() const {
        if (!v_->is_string()) fail("schema", "expected a string");
        return v_->get<std::string>();
    }

    long integer() const {
        if (!v_->is_number_integer()) fail("schema", "expected an integer");
        return v_->get<long>();
    }

    int index() const {
        long x = integer();
        if (x < 1 || x > 1000000000) fail("bad_index", "indices must be positive integers");
        return static_cast<int>(x);
    }

    Rational rational() const {
        if (v_->is_number_integer()) return Rational(v_->get<long>());
        if (v_->is_string()) return guard([&] { return parse_rational(v_->get<std::string>()); });
        fail("schema", "expected a rational as \"p/q\" or an integer");
    }

    Root root() const {
        return guard([&] { return parse_root(str()); });
    }

private:
    const json* v_;
    std::string path_;
};

inline json parse_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError("bad_json", std::string("invalid JSON: ") + e.what(), source);
    }
}

// ---------------------------------------------------------------------------
// Orders

inline IndexStream parse_stream(const Node& n) {
    n.require_object({"kind", "start", "step", "items"});
    std::string kind = n.at("kind").str();
    if (kind == "arith") {
        n.require_object({"kind", "start", "step"});
        return n.guard([&] { return IndexStream::arith(n.at("start").index(), static_cast<int>(n.at("step").index())); });
    }
    if (kind == "list") {
        n.require_object({"kind", "items"});
        std::vector<int> items;
        for (auto& e : n.at("items").elements()) items.push_back(e.index());
        return IndexStream::list(std::move(items));
    }
    n.at("kind").fail("schema", "stream kind must be 'arith' or 'list'");
}

/// {"system", "top", "bottom"?} or {"system", "preset": natural|interleaved|reversed}.
inline OrderSpec parse_order(const Node& n) {
    n.require_object({"system", "top", "bottom", "preset"});
    SystemType s = n.at("system").guard([&] { return parse_system(n.at("system").str()); });
    if (n.has("preset")) {
        if (n.has("top") || n.has("bottom")) n.fail("schema", "'preset' excludes 'top' and 'bottom'");
        std::string p = n.at("preset").str();
        if (p == "natural") return OrderSpec::natural(s);
        if (p == "interleaved") return OrderSpec::interleaved(s);
        if (p == "reversed") return OrderSpec::reversed(s);
        n.at("preset").fail("schema", "preset must be natural, interleaved or reversed");
    }
    IndexStream top = parse_stream(n.at("top"));
    IndexStream bottom = n.has("bottom") ? parse_stream(n.at("bottom")) : IndexStream::list({});
    return n.guard([&] { return OrderSpec(s, std::move(top), std::move(bottom)); });
}

inline json stream_to_json(const IndexStream& s) {
    if (s.finite()) return {{"kind", "list"}, {"items", s.items()}};
    return {{"kind", "arith"}, {"start", s.progression().start}, {"step", s.progression().step}};
}

inline json to_json(const OrderSpec& o) {
    return {{"system", std::string(1, to_char(o.system()))}, {"top", stream_to_json(o.top())}, {"bottom", stream_to_json(o.bottom())}};
}

// ---------------------------------------------------------------------------
// Linear forms

inline RationalStream parse_rational_stream(const Node& n) {
    n.require_object({"kind", "start", "step", "items"});
    std::string kind = n.at("kind").str();
    if (kind == "arith") {
        n.require_object({"kind", "start", "step"});
        return RationalStream::arith(n.at("start").rational(), n.at("step").rational());
    }
    if (kind == "list") {
        n.require_object({"kind", "items"});
        std::vector<Rational> items;
        for (auto& e : n.at("items").elements()) items.push_back(e.rational());
        return RationalStream::list(std::move(items));
    }
    n.at("kind").fail("schema", "stream kind must be 'arith' or 'list'");
}

/// Finitely supported entries must be positive roots of the order; tables
/// name a ≻-descending window and a strictly lower-triangular matrix.
inline LinearForm parse_linear_form(const Node& n, const OrderSpec& order) {
    n.require_object({"kind", "entries", "a", "b", "window", "matrix"});
    std::string kind = n.at("kind").str();
    if (kind == "finsupport") {
        n.require_object({"kind", "entries"});
        std::map<Root, Rational> entries;
        for (auto& e : n.at("entries").elements()) {
            e.require_object({"root", "value"});
            Root r = e.at("root").root();
            e.at("root").guard([&] { order.require_positive(r); });
            if (entries.count(r)) e.at("root").fail("duplicate", "root " + to_string(r) + " listed twice");
            entries[r] = e.at("value").rational();
        }
        return LinearForm::finsupport(std::move(entries));
    }
    if (kind == "cauchy") {
        n.require_object({"kind", "a", "b"});
        if (order.system() != SystemType::A) n.fail("unsupported_family", "the Cauchy family is defined for type A");
        auto a = parse_rational_stream(n.at("a"));
        auto b = parse_rational_stream(n.at("b"));
        return n.guard([&] { return LinearForm::cauchy(std::move(a), std::move(b)); });
    }
    if (kind == "table") {
        n.require_object({"kind", "window", "matrix"});
        std::vector<int> idx;
        for (auto& e : n.at("window").elements()) idx.push_back(e.index());
        std::set<int> m(idx.begin(), idx.end());
        if (m.size() != idx.size()) n.at("window").fail("bad_window", "window indices repeat");
        Window w = n.at("window").guard([&] { return Window(order, m); });
        if (w.indices() != idx) n.at("window").fail("bad_window", "window must be listed in decreasing order");
        auto rows = n.at("matrix").elements();
        Matrix mu(rows.size(), rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            auto cols = rows[r].elements();
            if (cols.size() != rows.size()) rows[r].fail("bad_table", "table matrix must be square");
            for (std::size_t c = 0; c < cols.size(); ++c) mu(r, c) = cols[c].rational();
        }
        return n.at("matrix").guard([&] { return LinearForm::from_window_matrix(w, mu); });
    }
    n.at("kind").fail("schema", "linear form kind must be finsupport, cauchy or table");
}

// ---------------------------------------------------------------------------
// Polynomials, PBW elements, Lie vectors

inline SymPoly parse_poly(const Node& n) {
    SymPoly out;
    for (auto& t : n.elements()) {
        t.require_object({"coeff", "monomial"});
        Rational c = t.at("coeff").rational();
        Monomial m;
        for (auto& f : t.at("monomial").elements()) {
            f.require_object({"root", "power"});
            long p = f.at("power").integer();
            if (p < 1 || p > 64) f.at("power").fail("schema", "power must be a positive integer");
            m = mono_mul(m, {{f.at("root").root(), static_cast<unsigned>(p)}});
        }
        out.add_term(m, c);
    }
    return out;
}

inline json to_json(const Rational& r) { return to_string(r); }

inline json to_json(const SymPoly& f) {
    json out = json::array();
    for (auto& [m, c] : f.terms()) {
        json mono = json::array();
        for (auto& [r, p] : m) mono.push_back({{"root", to_string(r)}, {"power", p}});
        out.push_back({{"coeff", to_string(c)}, {"monomial", mono}});
    }
    return out;
}

inline PbwElement parse_pbw(const Node& n, const Enveloping& u) {
    PbwElement out;
    for (auto& t : n.elements()) {
        t.require_object({"coeff", "word"});
        Rational c = t.at("coeff").rational();
        std::vector<Root> roots;
        for (auto& r : t.at("word").elements()) {
            Root root = r.root();
            if (!u.algebra().index_of(root)) r.fail("not_in_algebra", to_string(root) + " is not a basis root of the window");
            roots.push_back(root);
        }
        out.add_scaled(u.normalize_roots(roots), c);
    }
    return out;
}

inline json to_json(const PbwElement& u, const NilAlgebra& alg) {
    json out = json::array();
    for (auto& [w, c] : u.terms()) {
        json word = json::array();
        for (auto k : w) word.push_back(alg.label(k));
        out.push_back({{"coeff", to_string(c)}, {"word", word}});
    }
    return out;
}

inline LieVector parse_lie_vector(const Node& n) {
    LieVector out;
    for (auto& t : n.elements()) {
        t.require_object({"root", "value"});
        add_to(out, t.at("root").root(), t.at("value").rational());
    }
    return out;
}

inline json to_json(const LieVector& v) {
    json out = json::array();
    for (auto& [r, c] : v) out.push_back({{"root", to_string(r)}, {"value", to_string(c)}});
    return out;
}

/// Coordinates on an algebra's basis, listing every basis element.
inline json coords_to_json(const NilAlgebra& alg, const RVec& v) {
    json out = json::array();
    for (std::size_t k = 0; k < alg.dim(); ++k) {
        json e = {{"root", to_string(alg.root(k))}, {"value", to_string(v[k])}};
        if (alg.has_labels()) e["label"] = alg.label(k);
        out.push_back(e);
    }
    return out;
}

inline json roots_to_json(const std::vector<Root>& roots) {
    json out = json::array();
    for (auto& r : roots) out.push_back(to_string(r));
    return out;
}

inline json matrix_to_json(const Matrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        out.push_back(row);
    }
    return out;
}

}  // namespace nilcascade::json_io
