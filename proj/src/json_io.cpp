#include "lucluster/json_io.hpp"

#include <cmath>
#include <fstream>

namespace luc {

namespace {

std::vector<std::vector<Cost>> matrixFromJson(const json& j) {
    std::vector<std::vector<Cost>> m;
    for (const auto& row : j) m.push_back(row.get<std::vector<Cost>>());
    return m;
}

Cost pointDist(const std::vector<double>& a, const std::vector<double>& b, Cost scale) {
    double s = 0;
    for (std::size_t d = 0; d < a.size(); ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
    return static_cast<Cost>(std::llround(std::sqrt(s) * static_cast<double>(scale)));
}

}  // namespace

json instanceToJson(const Instance& inst) {
    json j;
    j["format"] = 1;
    j["problem_kind"] = kindName(inst.kind);
    j["objective"] = objectiveName(inst.objective);
    j["num_clients"] = inst.numClients;
    j["num_facilities"] = inst.numFacilities;
    j["k"] = inst.k;
    j["scale"] = inst.scale;
    j["lower"] = inst.lower;
    j["upper"] = inst.upper;
    j["opening_cost"] = inst.openingCost;
    j["client_facility"] = inst.clientFacility;
    j["facility_facility"] = inst.facilityFacility;
    return j;
}

Instance instanceFromJson(const json& j) {
    if (!j.is_object() || j.value("format", 0) != 1)
        throw ConfigError("instance json: expected object with format 1");
    Instance inst;
    inst.kind = parseKind(j.at("problem_kind").get<std::string>());
    inst.objective = j.contains("objective")
                         ? parseObjective(j.at("objective").get<std::string>())
                         : ((inst.kind == ProblemKind::LUkC || inst.kind == ProblemKind::LUkS)
                                ? Objective::MaxService
                                : Objective::SumService);
    inst.scale = j.value("scale", kDefaultScale);
    if (inst.scale <= 0) throw ConfigError("instance json: scale must be positive");

    if (j.contains("points")) {
        const auto& pts = j.at("points");
        auto clients = pts.at("clients").get<std::vector<std::vector<double>>>();
        auto facs = pts.at("facilities").get<std::vector<std::vector<double>>>();
        inst.numClients = static_cast<int>(clients.size());
        inst.numFacilities = static_cast<int>(facs.size());
        inst.clientFacility.assign(inst.numClients, std::vector<Cost>(inst.numFacilities));
        inst.facilityFacility.assign(inst.numFacilities, std::vector<Cost>(inst.numFacilities));
        for (int c = 0; c < inst.numClients; ++c)
            for (int f = 0; f < inst.numFacilities; ++f)
                inst.clientFacility[c][f] = pointDist(clients[c], facs[f], inst.scale);
        for (int a = 0; a < inst.numFacilities; ++a)
            for (int b = 0; b < inst.numFacilities; ++b)
                inst.facilityFacility[a][b] = a == b ? 0 : pointDist(facs[a], facs[b], inst.scale);
        for (int a = 0; a < inst.numFacilities; ++a)
            for (int b = a + 1; b < inst.numFacilities; ++b)
                inst.facilityFacility[b][a] = inst.facilityFacility[a][b];
    } else {
        inst.clientFacility = matrixFromJson(j.at("client_facility"));
        inst.facilityFacility = matrixFromJson(j.at("facility_facility"));
        inst.numClients = static_cast<int>(inst.clientFacility.size());
        inst.numFacilities = static_cast<int>(inst.facilityFacility.size());
    }

    inst.lower = j.at("lower").get<std::vector<int>>();
    inst.upper = j.at("upper").get<std::vector<int>>();
    inst.openingCost = j.contains("opening_cost")
                           ? j.at("opening_cost").get<std::vector<Cost>>()
                           : std::vector<Cost>(inst.numFacilities, 0);
    inst.k = j.value("k", inst.numFacilities);

    auto report = validate_instance(inst);
    if (!report.violations.empty())
        throw ConfigError("instance json: " + report.violations.front());
    return inst;
}

json solutionToJson(const Solution& sol) {
    json j;
    j["format"] = 1;
    j["open"] = sol.open;
    j["assign"] = sol.assign;
    return j;
}

Solution solutionFromJson(const json& j) {
    if (!j.is_object() || j.value("format", 0) != 1)
        throw ConfigError("solution json: expected object with format 1");
    Solution sol;
    sol.open = j.at("open").get<std::vector<int>>();
    sol.assign = j.at("assign").get<std::vector<int>>();
    return sol;
}

json traceToJson(const CombineTrace& trace) {
    json j;
    j["format"] = 1;
    json clients = json::array();
    for (const auto& e : trace.clients) {
        json c;
        c["facility"] = e.facility;
        c["type"] = assignTypeName(e.type);
        c["reserved"] = e.reserved;
        c["star"] = e.star;
        clients.push_back(std::move(c));
    }
    j["clients"] = std::move(clients);
    j["sigma_hat"] = trace.sigmaHat;
    json edges = json::array();
    for (const auto& e : trace.finalEdges) edges.push_back(json::array({e[0], e[1], e[2]}));
    j["final_edges"] = std::move(edges);
    j["events"] = trace.events;
    return j;
}

CombineTrace traceFromJson(const json& j) {
    if (!j.is_object() || j.value("format", 0) != 1)
        throw ConfigError("trace json: expected object with format 1");
    CombineTrace t;
    for (const auto& c : j.at("clients")) {
        TraceEntry e;
        e.facility = c.at("facility").get<int>();
        e.type = parseAssignType(c.at("type").get<std::string>());
        e.reserved = c.at("reserved").get<bool>();
        e.star = c.at("star").get<int>();
        t.clients.push_back(e);
    }
    t.sigmaHat = j.at("sigma_hat").get<std::vector<int>>();
    for (const auto& e : j.at("final_edges"))
        t.finalEdges.push_back({e.at(0).get<std::int64_t>(), e.at(1).get<std::int64_t>(),
                                e.at(2).get<std::int64_t>()});
    t.events = j.at("events").get<std::vector<std::string>>();
    return t;
}

json reportToJson(const GuaranteeReport& report) {
    json j;
    j["format"] = 1;
    json props = json::array();
    for (const auto& p : report.properties) {
        json e;
        e["name"] = p.name;
        e["pass"] = p.pass;
        e["hard"] = p.hard;
        e["witness"] = p.witness;
        props.push_back(std::move(e));
    }
    j["properties"] = std::move(props);
    j["beta_used"] = report.betaUsed.str();
    j["beta_empirical"] = report.betaEmpirical.str();
    j["cost_as1"] = report.costAs1;
    j["cost_as2"] = report.costAs2;
    j["cost_asI"] = report.costAsI;
    if (report.costOpt) j["cost_opt"] = *report.costOpt;
    j["all_hard_pass"] = report.allHardPass();
    return j;
}

json genSpecToJson(const GenSpec& spec) {
    json j;
    j["format"] = 1;
    j["seed"] = spec.seed;
    j["n"] = spec.n;
    j["m"] = spec.m;
    j["geometry"] = geometryName(spec.geometry);
    j["bound_mode"] = boundModeName(spec.boundMode);
    j["l_min"] = spec.lMin;
    j["l_max"] = spec.lMax;
    j["u_min"] = spec.uMin;
    j["u_max"] = spec.uMax;
    j["k"] = spec.k;
    j["f_min"] = spec.fMin;
    j["f_max"] = spec.fMax;
    j["problem_kind"] = kindName(spec.kind);
    return j;
}

GenSpec genSpecFromJson(const json& j) {
    if (!j.is_object() || j.value("format", 0) != 1)
        throw ConfigError("gen spec json: expected object with format 1");
    GenSpec spec;
    spec.seed = j.value("seed", spec.seed);
    spec.n = j.value("n", spec.n);
    spec.m = j.value("m", spec.m);
    if (j.contains("geometry")) spec.geometry = parseGeometry(j.at("geometry").get<std::string>());
    if (j.contains("bound_mode"))
        spec.boundMode = parseBoundMode(j.at("bound_mode").get<std::string>());
    spec.lMin = j.value("l_min", spec.lMin);
    spec.lMax = j.value("l_max", spec.lMax);
    spec.uMin = j.value("u_min", spec.uMin);
    spec.uMax = j.value("u_max", spec.uMax);
    spec.k = j.value("k", spec.k);
    spec.fMin = j.value("f_min", spec.fMin);
    spec.fMax = j.value("f_max", spec.fMax);
    if (j.contains("problem_kind")) spec.kind = parseKind(j.at("problem_kind").get<std::string>());
    return spec;
}

json loadJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return j;
}

void writeJsonFile(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace luc
