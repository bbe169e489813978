#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ebit/errors.hpp"
#include "ebit/numeric.hpp"
#include "ebit/schmidt.hpp"
#include "ebit/states.hpp"

// JSON state-file formats:
//   pure    {"dims": [dA, dB], "amplitudes": [[re, im], ...]}   (row-major, i = iA*dB + iB)
//   mixed   {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}
//   schmidt {"coeffs": [...]}                                    (parser sorts and validates)
// Parsers reject invariant violations with a diagnostic naming the failed
// invariant; serialization rounds every number to 12 significant digits.

namespace ebit {

using ordered_json = nlohmann::ordered_json;

// Rounded-number shim so identical inputs serialize byte-identically and
// nothing leaks more precision than the documented 12 significant digits.
inline double jnum(double x) { return round_sig(x); }

inline ordered_json to_json(const SchmidtVector& x) {
    ordered_json coeffs = ordered_json::array();
    for (int i = 0; i < x.size(); ++i) coeffs.push_back(jnum(x[i]));
    return ordered_json{{"coeffs", std::move(coeffs)}};
}

inline ordered_json to_json(const PureState& psi) {
    ordered_json amps = ordered_json::array();
    for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
        cplx z = psi.amplitudes()(i);
        amps.push_back(ordered_json::array({jnum(z.real()), jnum(z.imag())}));
    }
    return ordered_json{{"dims", {psi.dims().a, psi.dims().b}}, {"amplitudes", std::move(amps)}};
}

inline ordered_json to_json(const DensityMatrix& rho) {
    const Matrix& m = rho.matrix();
    ordered_json rows = ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(ordered_json::array({jnum(m(r, c).real()), jnum(m(r, c).imag())}));
        rows.push_back(std::move(row));
    }
    return ordered_json{{"dims", {rho.dims().a, rho.dims().b}}, {"matrix", std::move(rows)}};
}

namespace detail {

inline cplx complex_from_json(const ordered_json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(errc::parse_error, where + ": complex entries must be [re, im] number pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Dims dims_from_json(const ordered_json& j, const std::string& where) {
    if (!j.contains("dims")) fail(errc::parse_error, where + ": missing \"dims\" field");
    const ordered_json& d = j.at("dims");
    if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer())
        fail(errc::parse_error, where + ": \"dims\" must be [d_A, d_B] integers");
    return {d[0].get<int>(), d[1].get<int>()};
}

} // namespace detail

inline SchmidtVector schmidt_from_json(const ordered_json& j) {
    if (!j.contains("coeffs")) fail(errc::parse_error, "schmidt file: missing \"coeffs\" field");
    const ordered_json& c = j.at("coeffs");
    if (!c.is_array() || c.empty()) fail(errc::parse_error, "schmidt file: \"coeffs\" must be a nonempty array");
    std::vector<double> v;
    v.reserve(c.size());
    for (const ordered_json& e : c) {
        if (!e.is_number()) fail(errc::parse_error, "schmidt file: \"coeffs\" entries must be numbers");
        v.push_back(e.get<double>());
    }
    return SchmidtVector(std::move(v)); // constructor enforces the simplex invariants
}

inline PureState pure_from_json(const ordered_json& j) {
    Dims d = detail::dims_from_json(j, "pure state file");
    if (!j.contains("amplitudes")) fail(errc::parse_error, "pure state file: missing \"amplitudes\" field");
    const ordered_json& a = j.at("amplitudes");
    if (!a.is_array()) fail(errc::parse_error, "pure state file: \"amplitudes\" must be an array");
    Vector v(Eigen::Index(a.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = detail::complex_from_json(a[size_t(i)], "pure state file");
    return PureState(std::move(v), d); // constructor enforces length and norm invariants
}

inline DensityMatrix mixed_from_json(const ordered_json& j) {
    Dims d = detail::dims_from_json(j, "mixed state file");
    if (!j.contains("matrix")) fail(errc::parse_error, "mixed state file: missing \"matrix\" field");
    const ordered_json& m = j.at("matrix");
    if (!m.is_array() || m.empty()) fail(errc::parse_error, "mixed state file: \"matrix\" must be a nonempty array");
    Eigen::Index n = Eigen::Index(m.size());
    Matrix mat(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const ordered_json& row = m[size_t(r)];
        if (!row.is_array() || Eigen::Index(row.size()) != n)
            fail(errc::parse_error, "mixed state file: \"matrix\" must be square");
        for (Eigen::Index c = 0; c < n; ++c)
            mat(r, c) = detail::complex_from_json(row[size_t(c)], "mixed state file");
    }
    return DensityMatrix(std::move(mat), d); // constructor enforces trace/hermiticity/PSD
}

// Runtime-kind state: exactly one of the three file layouts.
using State = std::variant<PureState, DensityMatrix, SchmidtVector>;

inline const char* state_kind(const State& s) {
    if (std::holds_alternative<PureState>(s)) return "pure";
    if (std::holds_alternative<DensityMatrix>(s)) return "mixed";
    return "schmidt";
}

inline State state_from_json(const ordered_json& j) {
    if (!j.is_object()) fail(errc::parse_error, "state file: top level must be a JSON object");
    int kinds = int(j.contains("amplitudes")) + int(j.contains("matrix")) + int(j.contains("coeffs"));
    if (kinds != 1)
        fail(errc::parse_error,
             "state file: exactly one of \"amplitudes\" (pure), \"matrix\" (mixed), "
             "\"coeffs\" (schmidt) must be present");
    if (j.contains("amplitudes")) return pure_from_json(j);
    if (j.contains("matrix")) return mixed_from_json(j);
    return schmidt_from_json(j);
}

inline ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io_error, "file not found: " + path);
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail(errc::parse_error, "invalid JSON in " + path + ": " + e.what());
    }
}

inline State load_state(const std::string& path) { return state_from_json(load_json_file(path)); }

// --- Kind adapters -------------------------------------------------------------------
// Many operations want one specific representation; these convert where a
// faithful conversion exists and raise kind_mismatch otherwise.

// OSC view: pure states decompose, Schmidt files pass through, mixed states
// only qualify when they are (numerically) pure projectors.
inline SchmidtVector osc_of_state(const State& s) {
    if (const PureState* p = std::get_if<PureState>(&s)) return osc(*p);
    if (const SchmidtVector* x = std::get_if<SchmidtVector>(&s)) return *x;
    const DensityMatrix& rho = std::get<DensityMatrix>(s);
    if (!rho.is_pure())
        fail(errc::kind_mismatch,
             "expected a pure state or Schmidt coefficients; got a mixed density matrix "
             "(purity < 1)");
    return osc(rho.principal_pure());
}

// Pure view: Schmidt coefficients embed diagonally on d x d.
inline PureState pure_of_state(const State& s) {
    if (const PureState* p = std::get_if<PureState>(&s)) return *p;
    if (const SchmidtVector* x = std::get_if<SchmidtVector>(&s)) return pure_from_schmidt(*x);
    const DensityMatrix& rho = std::get<DensityMatrix>(s);
    return rho.principal_pure(); // raises not_pure with guidance when mixed
}

// Density view: every kind has a faithful projector/matrix form.
inline DensityMatrix density_of_state(const State& s) {
    if (const PureState* p = std::get_if<PureState>(&s)) return projector(*p);
    if (const SchmidtVector* x = std::get_if<SchmidtVector>(&s)) return projector(pure_from_schmidt(*x));
    return std::get<DensityMatrix>(s);
}

} // namespace ebit
