// SPDX-License-Identifier: Apache-2.0
#include "ia/serialize.hpp"

#include <sstream>

namespace ia {

namespace {

const char* check_kind_name(CheckKind k) {
    switch (k) {
        case CheckKind::zero_forcing: return "zero-forcing residual";
        case CheckKind::rank: return "rank";
        case CheckKind::span_dimension: return "span-dimension";
        case CheckKind::eigen_reality: return "eigen-reality";
        case CheckKind::symbolic: return "symbolic";
    }
    return "?";
}

const char* cmp_name(CheckCmp c) {
    switch (c) {
        case CheckCmp::below: return "<";
        case CheckCmp::above: return ">";
        case CheckCmp::equals: return "==";
    }
    return "?";
}

Setting setting_from_string(const std::string& s) {
    if (s == "real") return Setting::real;
    if (s == "complex") return Setting::complex_;
    throw std::invalid_argument("unknown setting: " + s);
}

Network network_from_string(const std::string& s) {
    if (s == "bc") return Network::bc;
    if (s == "x") return Network::x;
    if (s == "ic") return Network::ic;
    throw std::invalid_argument("unknown network: " + s);
}

}  // namespace

Json rational_to_json(const Rational& r) {
    return Json{{"num", numerator(r).str()},
                {"den", denominator(r).str()},
                {"decimal", to_double(r)}};
}

Json ledger_to_json(const VerificationLedger& ledger) {
    Json checks = Json::array();
    for (const auto& c : ledger.checks)
        checks.push_back(Json{{"name", c.name},
                              {"kind", check_kind_name(c.kind)},
                              {"measured", c.measured},
                              {"threshold", c.threshold},
                              {"cmp", cmp_name(c.cmp)},
                              {"pass", c.pass}});
    return Json{{"all_pass", ledger.all_pass()}, {"checks", checks}};
}

Json scenario_to_json(const CompoundScenario& sc) {
    return Json{{"network", network_name(sc.network)}, {"setting", setting_name(sc.setting)},
                {"M", sc.tx_count},                    {"users", sc.user_count},
                {"J", sc.states},                      {"seed", sc.seed}};
}

CompoundScenario scenario_from_json(const Json& j) {
    CompoundScenario sc;
    sc.network = network_from_string(j.at("network").get<std::string>());
    sc.setting = setting_from_string(j.at("setting").get<std::string>());
    sc.tx_count = j.at("M").get<int>();
    sc.user_count = j.at("users").get<int>();
    sc.states = j.at("J").get<std::vector<int>>();
    sc.seed = j.at("seed").get<std::uint64_t>();
    sc.validate();
    return sc;
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    Eigen::MatrixXcd m(rows, cols);
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const std::size_t idx = static_cast<std::size_t>(r * cols + c);
            m(r, c) = std::complex<double>(re.at(idx).get<double>(), im.at(idx).get<double>());
        }
    return m;
}

Json linear_scheme_to_json(const LinearScheme& s) {
    auto matrix_grid = [](const std::vector<std::vector<Eigen::MatrixXcd>>& grid) {
        Json out = Json::array();
        for (const auto& user : grid) {
            Json per_state = Json::array();
            for (const auto& m : user) per_state.push_back(matrix_to_json(m));
            out.push_back(per_state);
        }
        return out;
    };
    Json beams = Json::array();
    for (const auto& b : s.beamformers) beams.push_back(matrix_to_json(b));
    Json per_user = Json::array();
    for (const auto& d : s.per_user_dof) per_user.push_back(rational_to_json(d));
    return Json{{"type", "linear"},
                {"kind", linear_kind_name(s.kind)},
                {"dof_setting", setting_name(s.dof_setting)},
                {"complex_streams", s.complex_streams},
                {"slots", s.slots},
                {"channels", matrix_grid(s.channels)},
                {"combiners", matrix_grid(s.combiners)},
                {"beamformers", beams},
                {"message_user", s.message_user},
                {"message_tx", s.message_tx},
                {"streams", s.streams},
                {"dof_claimed", rational_to_json(s.dof_claimed)},
                {"per_user_dof", per_user}};
}

LinearScheme linear_scheme_from_json(const Json& j) {
    LinearScheme s;
    const std::string kind = j.at("kind").get<std::string>();
    bool found = false;
    for (LinearKind k : {LinearKind::thm1, LinearKind::thm2, LinearKind::appc_ex1,
                         LinearKind::appc_ex2, LinearKind::appc_ex3, LinearKind::appc_ex4,
                         LinearKind::weingarten, LinearKind::many_to_one})
        if (kind == linear_kind_name(k)) {
            s.kind = k;
            found = true;
        }
    if (!found) throw std::invalid_argument("unknown linear scheme kind: " + kind);
    s.dof_setting = setting_from_string(j.at("dof_setting").get<std::string>());
    s.complex_streams = j.at("complex_streams").get<bool>();
    s.slots = j.at("slots").get<int>();
    for (const auto& user : j.at("channels")) {
        std::vector<Eigen::MatrixXcd> per_state;
        for (const auto& m : user) per_state.push_back(matrix_from_json(m));
        s.channels.push_back(std::move(per_state));
    }
    for (const auto& user : j.at("combiners")) {
        std::vector<Eigen::MatrixXcd> per_state;
        for (const auto& m : user) per_state.push_back(matrix_from_json(m));
        s.combiners.push_back(std::move(per_state));
    }
    for (const auto& m : j.at("beamformers")) s.beamformers.push_back(matrix_from_json(m));
    s.message_user = j.at("message_user").get<std::vector<int>>();
    s.message_tx = j.at("message_tx").get<std::vector<int>>();
    s.streams = j.at("streams").get<std::vector<int>>();
    const auto& dof = j.at("dof_claimed");
    s.dof_claimed = Rational(BigInt(dof.at("num").get<std::string>()),
                             BigInt(dof.at("den").get<std::string>()));
    for (const auto& d : j.at("per_user_dof"))
        s.per_user_dof.emplace_back(BigInt(d.at("num").get<std::string>()),
                                    BigInt(d.at("den").get<std::string>()));
    return s;
}

Json rational_scheme_to_json(const RationalScheme& s) {
    Json sets = Json::array();
    for (const auto& set : s.sets) {
        Json members = Json::array();
        for (const auto& m : set.members) members.push_back(m.to_text(s.registry));
        Json vars = Json::array();
        for (int v : set.vars) vars.push_back(s.registry.names.at(v));
        sets.push_back(Json{{"vars", vars},
                            {"exponent_bound", set.exponent_bound},
                            {"size", set.size()},
                            {"members", members}});
    }
    Json zf = Json::array();
    for (Eigen::Index i = 0; i < s.zf_beamformer.size(); ++i) zf.push_back(s.zf_beamformer(i));
    return Json{{"type", "rational"},
                {"kind", rational_kind_name(s.kind)},
                {"scenario", scenario_to_json(s.scenario)},
                {"n", s.n},
                {"epsilon", rational_to_json(s.epsilon)},
                {"m_n", s.m_n},
                {"direction_sets", sets},
                {"message_names", s.message_names},
                {"streams_per_message", s.streams_per_message},
                {"zf_beamformer", zf},
                {"finite_dof", rational_to_json(s.finite_dof)},
                {"dof_limit", rational_to_json(s.dof_limit)},
                {"a_exponent", rational_to_json(s.a_exponent)},
                {"bound_exponent", rational_to_json(s.bound_exponent)},
                {"lambda", s.lambda}};
}

Json probe_to_json(const ConstellationProbe& p) {
    return Json{{"power", p.power},
                {"levels", p.levels},
                {"point_count", p.point_count},
                {"min_distance", {{"num", numerator(p.min_distance).str()},
                                  {"den", denominator(p.min_distance).str()}}},
                {"collision", p.collision},
                {"scale_factor", p.scale_factor},
                {"min_distance_scaled", p.min_distance_scaled},
                {"decode_error_estimate", p.decode_error_estimate}};
}

Json report_to_json(const DoFReport& r) {
    Json out{{"checks", ledger_to_json(r.checks)}, {"notes", r.notes}};
    if (r.dof_theoretical) out["dof_theoretical"] = rational_to_json(*r.dof_theoretical);
    if (r.dof_conjecture1) out["dof_conjecture1"] = rational_to_json(*r.dof_conjecture1);
    if (r.dof_conjecture2) out["dof_conjecture2"] = rational_to_json(*r.dof_conjecture2);
    out["conjectures_disproved"] = r.conjectures_disproved;
    if (r.dof_finite_n) out["dof_finite_n"] = rational_to_json(*r.dof_finite_n);
    if (r.empirical_slope) {
        out["dof_empirical_slope"] = *r.empirical_slope;
        out["dof_empirical_slope_stderr"] = *r.empirical_slope_stderr;
    }
    return out;
}

std::string sweep_to_csv(const RateSweep& sweep) {
    std::ostringstream os;
    os << "P,user,state,rate,total_rate\n";
    os.precision(12);
    for (std::size_t p = 0; p < sweep.powers.size(); ++p)
        for (std::size_t u = 0; u < sweep.rates[p].size(); ++u)
            for (std::size_t st = 0; st < sweep.rates[p][u].size(); ++st)
                os << sweep.powers[p] << "," << (u + 1) << "," << (st + 1) << ","
                   << sweep.rates[p][u][st] << "," << sweep.total_rates[p] << "\n";
    return os.str();
}

std::string config_hash(const Json& config) {
    const std::string dump = config.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace ia
