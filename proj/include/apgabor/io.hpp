#pragma once
//
// Module      : io
// Description : JSON forms of polynomials, sequences, families and reports
//
//   trig_polynomial  {"terms":[{"freq":..,"re":..,"im":..},...]}
//   ap_sequence      {"terms":[{"phase":..,"re":..,"im":..},...]}
//   analysis_family  {"alpha":..,"beta":..,"window":"spec",
//                     "entries":{"<ell>":ap_sequence,...},"tail_bound":..}
//

#include <cstdint>
#include <string>

#include <json.hpp>

#include "frames.hpp"
#include "gabor.hpp"
#include "windows.hpp"

namespace apgabor {

using json = nlohmann::json;

namespace detail {

inline double
number_field(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_number())
        throw argument_error(std::string("json: missing numeric field '") + key + "'");
    return j.at(key).get<double>();
}

}  // namespace detail

inline json
to_json(const trig_polynomial& f)
{
    json terms = json::array();
    for (const auto& t : f.terms())
        terms.push_back({{"freq", t.freq}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
    return {{"terms", terms}};
}

inline trig_polynomial
trig_polynomial_from_json(const json& j)
{
    if (!j.contains("terms") || !j.at("terms").is_array())
        throw argument_error("json: trig polynomial needs a 'terms' array");
    std::vector<trig_term> terms;
    for (const auto& t : j.at("terms"))
        terms.push_back({detail::number_field(t, "freq"),
                         {detail::number_field(t, "re"), detail::number_field(t, "im")}});
    return trig_polynomial(std::move(terms));
}

inline json
to_json(const ap_sequence& a)
{
    json terms = json::array();
    for (const auto& t : a.terms())
        terms.push_back({{"phase", t.phase}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
    return {{"terms", terms}};
}

inline ap_sequence
ap_sequence_from_json(const json& j)
{
    if (!j.contains("terms") || !j.at("terms").is_array())
        throw argument_error("json: AP sequence needs a 'terms' array");
    std::vector<seq_term> terms;
    for (const auto& t : j.at("terms"))
        terms.push_back({detail::number_field(t, "phase"),
                         {detail::number_field(t, "re"), detail::number_field(t, "im")}});
    return ap_sequence(std::move(terms));
}

inline json
to_json(const analysis_family& fam)
{
    json entries = json::object();
    for (const auto& [ell, a] : fam.entries)
        entries[std::to_string(ell)] = to_json(a);
    return {{"alpha", fam.alpha},
            {"beta", fam.beta},
            {"window", fam.window_spec},
            {"entries", entries},
            {"ell_truncation", fam.ell_truncation},
            {"tail_bound", fam.tail_bound}};
}

inline analysis_family
analysis_family_from_json(const json& j)
{
    analysis_family fam;
    fam.alpha = detail::number_field(j, "alpha");
    fam.beta  = detail::number_field(j, "beta");
    if (j.contains("window"))
        fam.window_spec = j.at("window").get<std::string>();
    if (j.contains("tail_bound"))
        fam.tail_bound = j.at("tail_bound").get<double>();
    if (!j.contains("entries") || !j.at("entries").is_object())
        throw argument_error("json: analysis family needs an 'entries' object");

    std::int64_t L = 0;
    for (const auto& [key, value] : j.at("entries").items()) {
        std::size_t  used = 0;
        std::int64_t ell  = 0;
        try {
            ell = std::stoll(key, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != key.size())
            throw argument_error("json: entry key '" + key + "' is not an integer");
        L = std::max<std::int64_t>(L, std::abs(ell));
        fam.entries.emplace(ell, ap_sequence_from_json(value));
    }
    fam.ell_truncation = j.contains("ell_truncation") ? j.at("ell_truncation").get<std::int64_t>() : L;
    return fam;
}

inline json
to_json(const wiener_estimate& w)
{
    return {{"value", w.value}, {"grid_sum", w.grid_sum}, {"tail", w.tail}, {"K", w.K},
            {"samples_per_interval", w.samples}};
}

inline json
to_json(const bessel_condition& b)
{
    return {{"sup", b.sup}, {"argmax_lambda", b.argmax}, {"max_tail", b.max_tail},
            {"grid_points", b.grid_points}, {"P", b.P}};
}

inline json
to_json(const frame_bounds_result& fb)
{
    return {{"A", fb.A},
            {"B", fb.B},
            {"lambda_grid", fb.lambda_grid},
            {"trunc_K", fb.trunc_K},
            {"ell_trunc", fb.ell_trunc},
            {"certified_slack", fb.certified_slack},
            {"grid_variation", fb.grid_variation},
            {"is_frame", fb.is_frame()},
            {"A_estimate_side", "upper estimate of the infimum"},
            {"B_estimate_side", "lower estimate of the supremum"}};
}

inline json
to_json(const sandwich_report& r)
{
    return {{"S", r.energy},     {"norm2", r.norm2}, {"ratio", r.ratio()}, {"lower", r.lower},
            {"upper", r.upper},  {"tail", r.tail},   {"passed", r.passed()},
            {"violations", r.violations}};
}

inline json
to_json(const subspace_bounds& s)
{
    return {{"A", s.A}, {"B", s.B}, {"sums", s.sums}, {"tails", s.tails}};
}

}  // namespace apgabor
