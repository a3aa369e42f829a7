#include "qdf/report.hpp"

#include <cstdio>
#include <sstream>

namespace qdf {

using nlohmann::json;

std::string format_number(double x)
{
    return json(x).dump();
}

namespace {

json cost_json(const CostReport& c)
{
    const auto& t = c.toffoli;
    const auto& q = c.qubits;
    return {
        {"n_orbitals", c.size.n},
        {"rank_R", c.size.r},
        {"eigvec_M", c.size.m},
        {"max_eigvec_per_rank", c.size.m_max},
        {"alpha_df", c.size.alpha},
        {"delta_e", c.budget.delta_e},
        {"pe_share", c.budget.pe_share},
        {"synth_share", c.budget.synth_share},
        {"delta_w", c.budget.delta_w(c.size.alpha)},
        {"mode", to_string(c.mode)},
        {"beta", c.precision.beta},
        {"mu", c.precision.mu},
        {"beta_one_body", c.precision.beta1},
        {"mu_one_body", c.precision.mu1},
        {"lambda", c.lambda},
        {"walk_toffoli", c.walk_toffoli},
        {"toffoli_breakdown",
         {{"lookup_compute", t.lookup_compute},
          {"lookup_uncompute", t.lookup_uncompute},
          {"rotations", t.rotations},
          {"controlled_swaps", t.controlled_swaps},
          {"state_prep", t.state_prep},
          {"reflection", t.reflection},
          {"one_body", t.one_body}}},
        {"logical_qubits", c.logical_qubits},
        {"qubit_breakdown",
         {{"system", q.system},
          {"angle_data", q.angle_data},
          {"index", q.index},
          {"state_prep_garbage", q.state_prep_garbage},
          {"misc", q.misc}}},
        {"pe_repetitions", c.pe_repetitions},
        {"total_toffoli", c.total_toffoli},
        {"leading_order", {{"walk_toffoli", c.leading_order_walk}, {"total_toffoli", c.leading_order_total}}},
        {"state_prep_error", c.state_prep_error},
        {"runtime_seconds", {{"at_10us_per_toffoli", c.runtime_fast_s}, {"at_10ms_per_toffoli", c.runtime_slow_s}}},
    };
}

std::string human_duration(double s)
{
    char buf[64];
    if (s < 120)
        std::snprintf(buf, sizeof buf, "%.3g s", s);
    else if (s < 7200)
        std::snprintf(buf, sizeof buf, "%.3g min", s / 60);
    else if (s < 2 * 86400)
        std::snprintf(buf, sizeof buf, "%.3g h", s / 3600);
    else if (s < 2 * 365.25 * 86400)
        std::snprintf(buf, sizeof buf, "%.3g days", s / 86400);
    else
        std::snprintf(buf, sizeof buf, "%.3g years", s / (365.25 * 86400));
    return buf;
}

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

} // namespace

json to_json(const EstimateResult& r)
{
    json j = {{"schema", "qdf-cost/1"}, {"label", r.label}};
    if (r.truncation) {
        const auto& t = *r.truncation;
        j["truncation"] = {{"scheme", to_string(t.scheme)},
                           {"epsilon", t.epsilon},
                           {"coherent_score", t.coherent_score},
                           {"incoherent_score", t.incoherent_score},
                           {"untruncated", {{"rank_R", t.full_R}, {"eigvec_M", t.full_M}, {"alpha_df", t.full_alpha}}}};
    } else {
        j["truncation"] = nullptr;
    }
    j["cost"] = cost_json(r.cost);
    return j;
}

json to_json(const SweepResult& s)
{
    json rows = json::array();
    for (const auto& p : s.points)
        rows.push_back({{"epsilon", p.row.epsilon},
                        {"R", p.row.R},
                        {"M", p.row.M},
                        {"alpha_df", p.row.alpha_df},
                        {"coherent_score", p.row.coherent_score},
                        {"incoherent_score", p.row.incoherent_score},
                        {"lambda", p.cost.lambda},
                        {"qubits", p.cost.logical_qubits},
                        {"toffoli", p.cost.total_toffoli}});
    json j = {{"schema", "qdf-sweep/1"}, {"label", s.label}, {"scheme", to_string(s.scheme)}, {"rows", rows}};
    if (!s.points.empty()) {
        const auto& c = s.points.front().cost;
        j["delta_e"] = c.budget.delta_e;
        j["mode"] = to_string(c.mode);
    }
    return j;
}

std::string estimate_csv(const std::vector<EstimateResult>& rows)
{
    std::ostringstream o;
    o << "Step,epsilon_in,N,R,M,alpha_DF,Qubits,Toffoli\n";
    for (const auto& r : rows) {
        const auto& c = r.cost;
        o << r.label << ',' << (r.truncation ? format_number(r.truncation->epsilon) : "") << ',' << c.size.n << ','
          << c.size.r << ',' << c.size.m << ',' << format_number(c.size.alpha) << ',' << c.logical_qubits << ','
          << c.total_toffoli << '\n';
    }
    return o.str();
}

std::string estimate_table(const EstimateResult& r)
{
    const auto& c = r.cost;
    const auto& t = c.toffoli;
    const auto& q = c.qubits;
    std::ostringstream o;
    o << "structure           " << r.label << "\n";
    if (r.truncation)
        o << "truncation          " << to_string(r.truncation->scheme) << " at " << sci(r.truncation->epsilon)
          << " Ha (R " << r.truncation->full_R << " -> " << c.size.r << ", M " << r.truncation->full_M << " -> "
          << c.size.m << ")\n";
    o << "N, R, M             " << c.size.n << ", " << c.size.r << ", " << c.size.m << "\n"
      << "alpha_DF            " << format_number(c.size.alpha) << " Ha\n"
      << "beta, mu, lambda    " << c.precision.beta << ", " << c.precision.mu << ", " << c.lambda << "  ("
      << to_string(c.mode) << ")\n"
      << "walk Toffoli        " << c.walk_toffoli << "\n"
      << "  lookup            " << t.lookup_compute << " + " << t.lookup_uncompute << "\n"
      << "  rotations         " << t.rotations << "\n"
      << "  controlled swaps  " << t.controlled_swaps << "\n"
      << "  state prep        " << t.state_prep << "\n"
      << "  reflection        " << t.reflection << "\n"
      << "  one-body          " << t.one_body << "\n"
      << "leading-order walk  " << c.leading_order_walk << "\n"
      << "repetitions         " << c.pe_repetitions << "\n"
      << "total Toffoli       " << sci(static_cast<double>(c.total_toffoli)) << "  (leading order "
      << sci(static_cast<double>(c.leading_order_total)) << ")\n"
      << "logical qubits      " << c.logical_qubits << "  (system " << q.system << ", angles " << q.angle_data
      << ", index " << q.index << ", garbage " << q.state_prep_garbage << ", misc " << q.misc << ")\n"
      << "runtime             " << human_duration(c.runtime_fast_s) << " at 10 us/Toffoli, "
      << human_duration(c.runtime_slow_s) << " at 10 ms/Toffoli\n";
    return o.str();
}

std::string sweep_csv(const SweepResult& s)
{
    std::ostringstream o;
    o << "epsilon,R,M,alpha_df,coherent_score,incoherent_score,lambda,qubits,toffoli\n";
    for (const auto& p : s.points)
        o << format_number(p.row.epsilon) << ',' << p.row.R << ',' << p.row.M << ',' << format_number(p.row.alpha_df)
          << ',' << format_number(p.row.coherent_score) << ',' << format_number(p.row.incoherent_score) << ','
          << p.cost.lambda << ',' << p.cost.logical_qubits << ',' << p.cost.total_toffoli << '\n';
    return o.str();
}

std::string sweep_table(const SweepResult& s)
{
    std::ostringstream o;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%-11s %5s %7s %12s %11s %11s %4s %8s %11s\n", "epsilon", "R", "M", "alpha_df",
                  "coherent", "incoherent", "lam", "qubits", "Toffoli");
    o << buf;
    for (const auto& p : s.points) {
        std::snprintf(buf, sizeof buf, "%-11.3e %5zu %7zu %12.6g %11.3e %11.3e %4lld %8lld %11.3e\n", p.row.epsilon,
                      p.row.R, p.row.M, p.row.alpha_df, p.row.coherent_score, p.row.incoherent_score,
                      static_cast<long long>(p.cost.lambda), static_cast<long long>(p.cost.logical_qubits),
                      static_cast<double>(p.cost.total_toffoli));
        o << buf;
    }
    return o.str();
}

} // namespace qdf
