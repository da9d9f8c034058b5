#pragma once

// JSON encodings of every type that crosses the CLI boundary. Integers are
// emitted as JSON numbers when they fit in 64 bits and as decimal strings
// otherwise; rationals are "p/q" strings. Object keys are sorted by the JSON
// library, so reports are byte-stable for identical inputs.

#include "k3lat/theorem5.hpp"

#include "json.hpp"

#include <limits>

namespace k3lat {

using json = nlohmann::json;

inline json encode(const Int& x) {
    static const Int lo = Int(std::numeric_limits<std::int64_t>::min());
    static const Int hi = Int(std::numeric_limits<std::int64_t>::max());
    if (x >= lo && x <= hi) return x.convert_to<std::int64_t>();
    return x.str();
}

inline Int decode_int(const json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer (number or decimal string)");
}

inline json encode(const Rat& x) { return to_string(x); }

inline Rat decode_rat(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    }
    throw std::invalid_argument("expected a rational (number or \"p/q\" string)");
}

inline json encode(const Vec& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(encode(x));
    return a;
}

inline Vec decode_vec(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of integers");
    Vec v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(decode_int(e));
    return v;
}

inline json encode(const QVec& v) {
    json a = json::array();
    for (const Rat& x : v) a.push_back(encode(x));
    return a;
}

inline QVec decode_qvec(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
    QVec v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(decode_rat(e));
    return v;
}

inline json encode(const IMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline IMat decode_imat(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a matrix (array of rows)");
    const int rows = static_cast<int>(j.size());
    const int cols = rows ? static_cast<int>(j.at(0).size()) : 0;
    IMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j.at(i).size()) != cols)
            throw std::invalid_argument("ragged matrix rows");
        for (int c = 0; c < cols; ++c) m(i, c) = decode_int(j.at(i).at(c));
    }
    return m;
}

inline json encode(const IntegerLattice& lat) {
    return json{{"rank", lat.rank()}, {"gram", encode(lat.gram())}};
}

inline IntegerLattice decode_lattice(const json& j) {
    const IMat gram = decode_imat(j.at("gram"));
    if (j.contains("rank") && j.at("rank").get<int>() != gram.rows())
        throw std::invalid_argument("lattice rank does not match the Gram matrix");
    return IntegerLattice(gram);
}

inline json encode(const Signature& s) {
    return json{{"positive", s.positive}, {"negative", s.negative}, {"null", s.null}};
}

inline json encode(const MukaiVector& v) {
    return json{{"r", encode(v.r)}, {"l", encode(v.l)}, {"s", encode(v.s)}};
}

inline MukaiVector decode_mukai(const json& j) {
    return MukaiVector{decode_int(j.at("r")), decode_vec(j.at("l")), decode_int(j.at("s"))};
}

inline json encode(const BVClass& u) {
    return json{{"a", encode(u.a)}, {"l", encode(u.l)}, {"m", encode(u.m)}};
}

inline BVClass decode_bv(const json& j) {
    return BVClass{decode_int(j.at("a")), decode_vec(j.at("l")), decode_int(j.at("m"))};
}

inline json encode(const DiscriminantGroup& d) {
    json gens = json::array();
    for (const QVec& g : d.generators()) gens.push_back(encode(g));
    json divs = json::array();
    for (const Int& x : d.divisors()) divs.push_back(encode(x));
    return json{{"divisors", divs}, {"generators", gens}};
}

inline json encode(const ReflectionFactorization& f) {
    json vecs = json::array();
    for (const QVec& v : f.vectors) vecs.push_back(encode(v));
    return json{{"vectors", vecs}, {"signs", f.signs}};
}

inline json encode(const KneserReport& r) {
    return json{{"witt_index", r.witt_index},
                {"rk2", r.rk2},
                {"rk3", r.rk3},
                {"minus_two_witness", r.minus_two_witness ? encode(*r.minus_two_witness) : json()},
                {"hypotheses_met", r.hypotheses_met},
                {"failures", r.failures}};
}

inline json encode(const WeylMembership& w) {
    json fac;
    if (w.factorization) {
        fac = json::array();
        for (const Vec& v : *w.factorization) fac.push_back(encode(v));
    }
    return json{{"applicable", w.applicable},
                {"spinor", w.spinor},
                {"discriminant_trivial", w.discriminant_trivial},
                {"is_member", w.is_member},
                {"factorization", fac},
                {"budget_exhausted", w.budget_exhausted}};
}

inline json encode(const ChamberWalk& w) {
    json word = json::array();
    for (const Vec& c : w.word) word.push_back(encode(c));
    return json{{"result", encode(w.result)}, {"word", word}, {"exhausted", w.exhausted}};
}

inline json encode(const P0Verdict& v) {
    return json{{"inside", v.inside},
                {"plane_positive", v.plane_positive},
                {"witness", v.witness ? encode(*v.witness) : json()},
                {"bound_used", v.bound_used}};
}

inline K3LatticeData decode_k3(const json& j) {
    K3LatticeData data;
    data.ns = decode_lattice(j.at("ns"));
    if (j.contains("ample") && !j.at("ample").is_null()) data.ample = decode_vec(j.at("ample"));
    if (j.contains("curves") && !j.at("curves").is_null()) {
        std::vector<Vec> curves;
        for (const auto& c : j.at("curves")) curves.push_back(decode_vec(c));
        data.curve_classes = std::move(curves);
    }
    validate_k3(data);
    return data;
}

inline json encode(const Theorem5Report& r) {
    json fac;
    if (r.factorization) {
        fac = json::array();
        for (const MukaiVector& v : *r.factorization) fac.push_back(encode(v));
    }
    return json{{"schema", "k3lat/1"},
                {"input_valid", r.input_valid},
                {"ns_hyperbolic", r.ns_hyperbolic},
                {"disc_trivial_on_ns", r.disc_trivial_on_ns},
                {"hypotheses", encode(r.hypotheses)},
                {"det", r.det},
                {"spinor", r.spinor},
                {"orientation", r.orientation ? json(*r.orientation) : json()},
                {"is_weyl_member", r.is_weyl_member},
                {"factorization", fac},
                {"budget_exhausted", r.budget_exhausted},
                {"conclusion", to_string(r.conclusion)}};
}

}  // namespace k3lat
