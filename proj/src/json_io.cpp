#include "gptcompat/json_io.hpp"

#include <fstream>
#include <sstream>

namespace gptcompat {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object())
        throw ParseError(std::string("expected a JSON object with key \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string("missing key \"") + key + "\"");
    return *it;
}

const Json& array_field(const Json& j, const char* key)
{
    const Json& a = field(j, key);
    if (!a.is_array())
        throw ParseError(std::string("key \"") + key + "\" must hold an array");
    return a;
}

Relation relation_from(const std::string& s)
{
    if (s == "<=")
        return Relation::LessEqual;
    if (s == "=")
        return Relation::Equal;
    if (s == ">=")
        return Relation::GreaterEqual;
    throw ParseError("unknown relation \"" + s + "\"");
}

const char* relation_name(Relation r)
{
    return r == Relation::LessEqual ? "<=" : r == Relation::Equal ? "=" : ">=";
}

Json optional_bound(const std::optional<Rational>& b)
{
    return b ? to_json(*b) : Json(nullptr);
}

WitnessOrigin origin_from(const std::string& s)
{
    for (auto o : {WitnessOrigin::Sampled, WitnessOrigin::Planted, WitnessOrigin::Injected, WitnessOrigin::Extremal})
        if (s == origin_name(o))
            return o;
    throw ParseError("unknown witness origin \"" + s + "\"");
}

} // namespace

Json parse_json_text(const std::string& text, const std::string& source)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character
        std::size_t line = 1, column = 1;
        const std::size_t stop = e.byte > 0 ? std::min<std::size_t>(e.byte - 1, text.size()) : 0;
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string what = e.what();
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what);
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

Json to_json(const Rational& q)
{
    return to_string(q);
}

Rational rational_from_json(const Json& j)
{
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return parse_rational(j.dump());
    throw ParseError("expected a rational string such as \"3/4\", got " + j.dump());
}

Json to_json(const RationalVector& v)
{
    Json out = Json::array();
    for (const auto& q : v)
        out.push_back(to_json(q));
    return out;
}

RationalVector rational_vector_from_json(const Json& j)
{
    if (!j.is_array())
        throw ParseError("expected an array of rationals, got " + j.dump());
    RationalVector out;
    for (const auto& e : j)
        out.push_back(rational_from_json(e));
    return out;
}

Json space_to_json(const StateSpace& space)
{
    Json verts = Json::array();
    for (const auto& v : space.vertices())
        verts.push_back(to_json(v));
    return Json{{"dimension", space.dimension()}, {"vertices", verts}};
}

SpacePtr space_from_json(const Json& j)
{
    const Json& dim = field(j, "dimension");
    if (!dim.is_number_unsigned())
        throw ParseError("\"dimension\" must be a non-negative integer");
    const auto d = dim.get<std::size_t>();
    std::vector<Point> pts;
    for (const auto& v : array_field(j, "vertices")) {
        Point p = rational_vector_from_json(v);
        if (p.size() != d)
            throw ParseError("vertex " + v.dump() + " does not have " + std::to_string(d) + " coordinates");
        pts.push_back(std::move(p));
    }
    if (pts.empty())
        throw ParseError("state space needs at least one vertex");
    return canonicalize_vertices(pts);
}

Json functional_to_json(const AffineFunctional& f)
{
    return Json{{"constant", to_json(f.constant())}, {"linear", to_json(f.linear())}};
}

AffineFunctional functional_from_json(const Json& j, const SpacePtr& space)
{
    RationalVector lin = rational_vector_from_json(field(j, "linear"));
    if (lin.size() != space->dimension())
        throw ParseError("functional has " + std::to_string(lin.size()) + " linear coefficients, space dimension is " +
                         std::to_string(space->dimension()));
    return AffineFunctional(space, rational_from_json(field(j, "constant")), std::move(lin));
}

Json measurement_to_json(const Measurement& m)
{
    Json outs = Json::array();
    for (const auto& f : m.outcomes())
        outs.push_back(functional_to_json(f));
    return Json{{"outcomes", outs}};
}

Measurement measurement_from_json(const Json& j, const SpacePtr& space)
{
    std::vector<AffineFunctional> outs;
    for (const auto& f : array_field(j, "outcomes"))
        outs.push_back(functional_from_json(f, space));
    if (!validate_measurement(outs))
        throw ParseError("outcomes do not form a measurement (non-negative, summing to the unit)");
    return Measurement(std::move(outs));
}

Json lp_to_json(const LpProblem& p)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < p.num_rows(); ++i)
        rows.push_back(Json{{"coefficients", to_json(p.constraints.row(i))},
                            {"relation", relation_name(p.relations[i])},
                            {"rhs", to_json(p.rhs[i])}});
    Json lower = Json::array(), upper = Json::array();
    for (std::size_t j = 0; j < p.num_variables(); ++j) {
        lower.push_back(optional_bound(p.lower[j]));
        upper.push_back(optional_bound(p.upper[j]));
    }
    return Json{{"objective", to_json(p.objective)}, {"rows", rows}, {"lower", lower}, {"upper", upper}};
}

LpProblem lp_from_json(const Json& j)
{
    LpProblem p = LpProblem::with_variables(rational_vector_from_json(field(j, "objective")).size());
    p.objective = rational_vector_from_json(field(j, "objective"));
    for (const auto& r : array_field(j, "rows")) {
        try {
            p.add_row(rational_vector_from_json(field(r, "coefficients")),
                      relation_from(field(r, "relation").get<std::string>()), rational_from_json(field(r, "rhs")));
        } catch (const LpDimensionError& e) {
            throw ParseError(std::string("LP row: ") + e.what());
        }
    }
    const Json& lower = array_field(j, "lower");
    const Json& upper = array_field(j, "upper");
    if (lower.size() != p.num_variables() || upper.size() != p.num_variables())
        throw ParseError("LP bounds must have one entry per variable");
    for (std::size_t k = 0; k < p.num_variables(); ++k) {
        if (!lower[k].is_null())
            p.lower[k] = rational_from_json(lower[k]);
        if (!upper[k].is_null())
            p.upper[k] = rational_from_json(upper[k]);
    }
    return p;
}

namespace {

Json joint_to_json(const JointFamily& joint)
{
    Json rows = Json::array();
    for (const auto& row : joint) {
        Json r = Json::array();
        for (const auto& h : row)
            r.push_back(functional_to_json(h));
        rows.push_back(r);
    }
    return rows;
}

JointFamily joint_from_json(const Json& j, const SpacePtr& space)
{
    if (!j.is_array())
        throw ParseError("joint must be an array of arrays");
    JointFamily joint;
    for (const auto& row : j) {
        if (!row.is_array())
            throw ParseError("joint must be an array of arrays");
        std::vector<AffineFunctional> r;
        for (const auto& h : row)
            r.push_back(functional_from_json(h, space));
        joint.push_back(std::move(r));
    }
    return joint;
}

Json certificate_fields(Json base, const InfeasibilityWitness& w)
{
    base["farkas"] = to_json(w.farkas);
    base["lp"] = w.problem ? lp_to_json(*w.problem) : Json(nullptr);
    return base;
}

InfeasibilityWitness certificate_from(const Json& j)
{
    InfeasibilityWitness w;
    w.farkas = rational_vector_from_json(field(j, "farkas"));
    auto it = j.find("lp");
    if (it != j.end() && !it->is_null())
        w.problem = std::make_shared<const LpProblem>(lp_from_json(*it));
    return w;
}

} // namespace

Json verdict_to_json(const CompatibilityVerdict& v)
{
    if (const auto* c = std::get_if<Compatible>(&v))
        return Json{{"verdict", "compatible"}, {"joint", joint_to_json(c->joint)}};
    return certificate_fields(Json{{"verdict", "incompatible"}}, std::get<Incompatible>(v).certificate);
}

CompatibilityVerdict verdict_from_json(const Json& j, const SpacePtr& space)
{
    const std::string tag = field(j, "verdict").get<std::string>();
    if (tag == "compatible")
        return Compatible{joint_from_json(field(j, "joint"), space)};
    if (tag == "incompatible")
        return Incompatible{certificate_from(j)};
    throw ParseError("unknown verdict \"" + tag + "\"");
}

Json robustness_to_json(const RobustnessResult& r)
{
    return Json{{"lambda_star", to_json(r.lambda_star)}, {"joint", joint_to_json(r.witness_joint)}};
}

Json riesz_result_to_json(const RieszResult& r)
{
    if (const auto* d = std::get_if<RieszDecomposition>(&r))
        return Json{{"decomposable", true}, {"u1", functional_to_json(d->u1)}, {"u2", functional_to_json(d->u2)}};
    return certificate_fields(Json{{"decomposable", false}}, std::get<InfeasibilityWitness>(r));
}

RieszResult riesz_result_from_json(const Json& j, const SpacePtr& space)
{
    const Json& flag = field(j, "decomposable");
    if (!flag.is_boolean())
        throw ParseError("\"decomposable\" must be a boolean");
    if (flag.get<bool>())
        return RieszDecomposition{functional_from_json(field(j, "u1"), space), functional_from_json(field(j, "u2"), space)};
    return certificate_from(j);
}

Json witness_to_json(const ScanWitness& w)
{
    Json fs = Json::array();
    for (const auto& f : w.functionals)
        fs.push_back(functional_to_json(f));
    return certificate_fields(Json{{"origin", origin_name(w.origin)}, {"index", w.index}, {"functionals", fs}},
                              w.certificate);
}

ScanWitness witness_from_json(const Json& j, const SpacePtr& space)
{
    ScanWitness w;
    w.origin = origin_from(field(j, "origin").get<std::string>());
    w.index = field(j, "index").get<std::size_t>();
    for (const auto& f : array_field(j, "functionals"))
        w.functionals.push_back(functional_from_json(f, space));
    w.certificate = certificate_from(j);
    return w;
}

Json report_to_json(const ScanReport& r)
{
    return Json{{"space_id", r.space_id},
                {"seed", r.seed},
                {"pairs_tested", r.pairs_tested},
                {"incompatible_count", r.incompatible_count},
                {"sampled_pairs", r.sampled_pairs},
                {"injected_pairs", r.injected_pairs},
                {"extremal_effects", r.extremal_effects},
                {"exhaustive", r.exhaustive},
                {"wall_time_ms", r.wall_time_ms},
                {"first_witness", r.first_witness ? witness_to_json(*r.first_witness) : Json(nullptr)}};
}

ScanReport report_from_json(const Json& j, const SpacePtr& space)
{
    try {
        ScanReport r;
        r.space_id = field(j, "space_id").get<std::string>();
        r.seed = field(j, "seed").get<std::uint64_t>();
        r.pairs_tested = field(j, "pairs_tested").get<std::size_t>();
        r.incompatible_count = field(j, "incompatible_count").get<std::size_t>();
        r.sampled_pairs = field(j, "sampled_pairs").get<std::size_t>();
        r.injected_pairs = field(j, "injected_pairs").get<std::size_t>();
        r.extremal_effects = field(j, "extremal_effects").get<std::size_t>();
        r.exhaustive = field(j, "exhaustive").get<bool>();
        r.wall_time_ms = field(j, "wall_time_ms").get<double>();
        const Json& w = field(j, "first_witness");
        if (!w.is_null())
            r.first_witness = witness_from_json(w, space);
        return r;
    } catch (const Json::type_error& e) {
        throw ParseError(std::string("scan report: ") + e.what());
    }
}

std::string report_csv_header()
{
    return "space_id,seed,pairs_tested,incompatible_count,witness_path";
}

std::string report_csv_row(const ScanReport& r, const std::string& witness_path)
{
    return r.space_id + "," + std::to_string(r.seed) + "," + std::to_string(r.pairs_tested) + "," +
           std::to_string(r.incompatible_count) + "," + witness_path;
}

} // namespace gptcompat
