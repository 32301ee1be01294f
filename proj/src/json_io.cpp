#include "gcsa/json_io.hpp"

#include <fstream>
#include <sstream>

namespace gcsa {

using nlohmann::json;

namespace {

EntityKind entity_kind_from(const std::string& kind, PlaneScheme scheme, const std::string& id) {
    if (kind == "point") return EntityKind::Point;
    if (kind == "line") return EntityKind::Line;
    if (kind == "cylinder") return EntityKind::Cylinder;
    if (kind == "plane")
        return scheme == PlaneScheme::Homogeneous ? EntityKind::PlaneHomogeneous
                                                  : EntityKind::PlanePointNormal;
    throw ParseError("entity '" + id + "': unknown kind '" + kind + "'");
}

ConstraintKind constraint_kind_from(const std::string& kind, const std::string& id) {
    static const std::pair<const char*, ConstraintKind> table[] = {
        {"point-point-distance", ConstraintKind::PointPointDistance},
        {"point-plane-distance", ConstraintKind::PointPlaneDistance},
        {"point-line-distance", ConstraintKind::PointLineDistance},
        {"plane-plane-distance", ConstraintKind::PlanePlaneDistance},
        {"line-line-distance", ConstraintKind::LineLineDistance},
        {"vector-angle", ConstraintKind::VectorAngle},
        {"vector-parallel", ConstraintKind::VectorParallel},
        {"point-on-plane", ConstraintKind::PointOnPlane},
        {"point-on-line", ConstraintKind::PointOnLine},
        {"coaxial", ConstraintKind::Coaxial},
        {"unit-norm", ConstraintKind::UnitNorm},
    };
    for (const auto& [name, k] : table)
        if (kind == name) return k;
    throw ParseError("constraint '" + id + "': unknown kind '" + kind + "'");
}

LinearSystem parse_linear(const json& j) {
    if (!j.contains("A") || !j.contains("b")) throw ParseError("linear block needs \"A\" and \"b\"");
    const json& A = j.at("A");
    const json& b = j.at("b");
    if (!A.is_array() || A.empty() || !A[0].is_array()) throw ParseError("\"A\" must be a 2-d array");
    LinearSystem s;
    const int m = static_cast<int>(A.size());
    const int n = static_cast<int>(A[0].size());
    s.A.resize(m, n);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(A[i].size()) != n) throw ParseError("ragged rows in \"A\"");
        for (int k = 0; k < n; ++k) s.A(i, k) = A[i][k].get<double>();
    }
    if (static_cast<int>(b.size()) != m) throw ParseError("\"b\" length does not match \"A\" rows");
    s.b.resize(m);
    for (int i = 0; i < m; ++i) s.b[i] = b[i].get<double>();
    return s;
}

GcsModel parse_model(const json& j) {
    std::string scheme_name = j.value("scheme", "homogeneous");
    PlaneScheme scheme;
    if (scheme_name == "homogeneous")
        scheme = PlaneScheme::Homogeneous;
    else if (scheme_name == "point-normal")
        scheme = PlaneScheme::PointNormal;
    else
        throw ParseError("unknown scheme '" + scheme_name + "'");

    std::vector<Entity> entities;
    for (const json& je : j.value("entities", json::array())) {
        Entity e;
        e.id = je.value("id", "");
        if (e.id.empty()) throw ParseError("entity missing \"id\"");
        e.kind = entity_kind_from(je.value("kind", ""), scheme, e.id);
        for (const json& p : je.value("params", json::array())) e.params.push_back(p.get<double>());
        entities.push_back(std::move(e));
    }
    std::vector<Constraint> constraints;
    for (const json& jc : j.value("constraints", json::array())) {
        Constraint c;
        c.id = jc.value("id", "");
        if (c.id.empty()) throw ParseError("constraint missing \"id\"");
        c.kind = constraint_kind_from(jc.value("kind", ""), c.id);
        for (const json& r : jc.value("refs", json::array())) c.refs.push_back(r.get<std::string>());
        c.value = jc.value("value", 0.0);
        c.weight = jc.value("weight", 1.0);
        constraints.push_back(std::move(c));
    }
    return GcsModel::make(scheme, std::move(entities), std::move(constraints));
}

} // namespace

LoadedInput load_input(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (j.contains("linear")) return parse_linear(j.at("linear"));
    return parse_model(j);
}

LoadedInput load_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_input(buf.str());
}

json to_json(const GcsModel& model) {
    json j;
    j["scheme"] = to_string(model.scheme());
    j["entities"] = json::array();
    for (const auto& e : model.entities()) {
        j["entities"].push_back({{"id", e.id}, {"kind", to_string(e.kind)}, {"params", e.params}});
    }
    j["constraints"] = json::array();
    for (const auto& c : model.constraints()) {
        if (c.auto_generated) continue;
        json jc{{"id", c.id}, {"kind", to_string(c.kind)}, {"refs", c.refs}, {"value", c.value}};
        if (c.weight != 1.0) jc["weight"] = c.weight;
        j["constraints"].push_back(std::move(jc));
    }
    return j;
}

json to_json(const LinearSystem& sys) {
    json A = json::array();
    for (int i = 0; i < sys.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < sys.cols(); ++k) row.push_back(sys.A(i, k));
        A.push_back(std::move(row));
    }
    json b = json::array();
    for (int i = 0; i < sys.b.size(); ++i) b.push_back(sys.b[i]);
    return json{{"linear", {{"A", A}, {"b", b}}}};
}

json to_json(const AnalysisReport& r) {
    return json{
        {"column_size", r.column_size},
        {"row_size", r.row_size},
        {"rank", r.rank},
        {"kernel_dim", r.kernel_dim},
        {"dor", r.dor},
        {"plain_state", to_string(r.plain_state)},
        {"dor_state", to_string(r.dor_state)},
        {"matched", r.matched},
        {"tol_used", r.tol_used},
    };
}

json to_json(const LinearClassification& c) {
    return json{
        {"consistent", c.consistent}, {"under", c.under},
        {"consistently_over", c.consistently_over}, {"over", c.over},
        {"well", c.well}, {"rank_a", c.rank_a}, {"rank_ab", c.rank_ab},
        {"labels", c.to_string()},
    };
}

json groups_to_json(const std::vector<DependencyGroup>& groups, const std::vector<RowRef>& rows) {
    json out = json::array();
    for (const auto& g : groups) {
        json labels = json::array();
        for (int r : g.rows) labels.push_back(rows[r].label);
        out.push_back(std::move(labels));
    }
    return out;
}

json to_json(const WcPartition& p) {
    json parts = json::array();
    for (const auto& part : p.parts) parts.push_back(part);
    return json{{"parts", parts}, {"leftover", p.leftover}};
}

} // namespace gcsa
