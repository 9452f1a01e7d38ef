#include "mhaar/io.hpp"

#include "mhaar/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mhaar::io {

namespace {

void emit(const Json& j, std::string& out, int indent, int level)
{
    auto newline = [&](int lvl) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * lvl), ' ');
    };
    switch (j.type()) {
    case Json::value_t::number_float: {
        double d = j.get<double>();
        if (!std::isfinite(d)) {
            out += std::isnan(d) ? "\"NaN\"" : (d > 0 ? "\"Infinity\"" : "\"-Infinity\"");
            break;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", d);
        out += buf;
        break;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            break;
        }
        out += '[';
        bool first = true;
        for (const auto& v : j) {
            if (!first) out += ',';
            first = false;
            newline(level + 1);
            emit(v, out, indent, level + 1);
        }
        newline(level);
        out += ']';
        break;
    }
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            break;
        }
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ',';
            first = false;
            newline(level + 1);
            out += Json(it.key()).dump();
            out += indent < 0 ? ":" : ": ";
            emit(it.value(), out, indent, level + 1);
        }
        newline(level);
        out += '}';
        break;
    }
    default: out += j.dump(); break;
    }
}

Json opt_segment(const std::optional<Segment>& s) { return s ? segment(*s) : Json(nullptr); }
Json opt_point(const std::optional<TaggedPoint>& y) { return y ? point(*y) : Json(nullptr); }

template <class T> Json list(const std::vector<T>& xs)
{
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(x);
    return a;
}

Json quantities(const std::vector<Quantity>& xs)
{
    Json a = Json::array();
    for (const auto& q : xs) a.push_back(quantity(q));
    return a;
}

} // namespace

const char* version() { return MHAAR_VERSION; }

std::string dump(const Json& j, int indent)
{
    std::string out;
    emit(j, out, indent, 0);
    return out;
}

Json rational(const Rational& q) { return to_string(q); }

Json quantity(const Quantity& q)
{
    switch (q.kind()) {
    case Quantity::Kind::Exact: return to_string(q.rational());
    case Quantity::Kind::Real: return q.value();
    case Quantity::Kind::Divergent: return "Divergent";
    }
    return nullptr;
}

Json segment(const Segment& s)
{
    return Json::array({s.lo_inf ? Json("-inf") : rational(s.lo), s.hi_inf ? Json("+inf") : rational(s.hi)});
}

Json point(const TaggedPoint& y) { return y.to_string(); }

Json step(const StepFunction& f, int m)
{
    Json j;
    j["m"] = m;
    j["breakpoints"] = Json::array();
    j["values"] = Json::array();
    for (const auto& b : f.breakpoints()) j["breakpoints"].push_back(rational(b));
    for (const auto& v : f.values()) j["values"].push_back(rational(v));
    return j;
}

Json step(const RealStep& f, int m)
{
    Json j;
    j["m"] = m;
    j["breakpoints"] = Json::array();
    j["values"] = Json::array();
    for (const auto& b : f.breakpoints()) j["breakpoints"].push_back(rational(b));
    for (double v : f.values()) j["values"].push_back(v);
    return j;
}

StepFunction step_from_json(const Json& j, int* m)
{
    if (!j.is_object() || !j.contains("breakpoints") || !j.contains("values"))
        throw InvalidArgument("step function JSON needs \"breakpoints\" and \"values\"");
    int mm = j.value("m", 2);
    if (mm < 2) throw InvalidArgument("m must be at least 2");
    if (m) *m = mm;
    std::vector<Rational> bp, vals;
    auto read = [](const Json& v) {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(Integer(v.get<long>()));
        throw InvalidArgument("rationals must be \"a/b\" strings or integers");
    };
    for (const auto& b : j.at("breakpoints")) bp.push_back(read(b));
    for (const auto& v : j.at("values")) vals.push_back(read(v));
    return StepFunction(std::move(bp), std::move(vals));
}

StepFunction load_step(const std::string& path, int* m)
{
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw InvalidArgument("malformed JSON in " + path + ": " + e.what());
    }
    return step_from_json(j, m);
}

Weight parse_weight(const std::string& spec)
{
    return Weight::parse(spec, [](const std::string& path) { return load_step(path); });
}

Json to_json(const WeightReport& r)
{
    Json j;
    j["condition"] = r.condition;
    j["p"] = r.p;
    j["m"] = r.m;
    j["region"] = r.region;
    j["weight"] = r.weight;
    j["point"] = opt_point(r.point);
    j["sup"] = quantity(r.sup);
    j["witness"] = opt_segment(r.witness);
    j["verdict"] = to_string(r.verdict);
    j["trend"] = r.trend;
    j["evidence"] = r.evidence;
    j["proof"] = r.proof;
    j["depth_limit"] = r.depth_limit;
    j["cells_checked"] = r.cells_checked;
    Json levels = Json::array();
    for (const auto& lc : r.per_depth)
        levels.push_back({{"level", lc.level}, {"value", quantity(lc.value)}, {"witness", opt_segment(lc.witness)}});
    j["per_depth"] = levels;
    return j;
}

Json to_json(const MinftyReport& r)
{
    Json j;
    j["delta"] = r.delta;
    j["delta_aligned_left"] = r.delta_aligned_left;
    j["delta_aligned_right"] = r.delta_aligned_right;
    j["c_at_delta_one"] = r.c_at_delta_one;
    j["samples"] = r.samples;
    j["depth"] = r.depth;
    Json curve = Json::array();
    for (const auto& [d, c] : r.curve) curve.push_back({{"delta", d}, {"C", c}});
    j["curve"] = curve;
    j["worst"] = {{"cell", segment(r.worst.cell)},
                  {"subset", r.worst.subset},
                  {"mass_ratio", r.worst.mass_ratio},
                  {"length_ratio", r.worst.length_ratio}};
    return j;
}

Json to_json(const ConjugateReport& r)
{
    return {{"original", to_json(r.original)},
            {"conjugate", to_json(r.conjugate)},
            {"max_identity_error", r.max_identity_error},
            {"pass", r.pass}};
}

Json to_json(const RingRatioReport& r)
{
    return {{"precondition_ok", r.precondition_ok}, {"reason", r.reason}, {"c_p", r.c_p},
            {"q_p", r.q_p},                         {"ratios", quantities(r.ratios)},
            {"min_ratio", quantity(r.min_ratio)},   {"pass", r.pass}};
}

Json to_json(const DilationReport& r)
{
    return {{"N", r.N},           {"level", r.level}, {"max_relative_error", r.max_relative_error},
            {"exact", r.exact},   {"compared", r.compared}, {"pass", r.pass}};
}

Json to_json(const TailReport& r)
{
    return {{"integrable_at_infinity", r.integrable_at_infinity},
            {"skipped", r.skipped},
            {"reason", r.reason},
            {"ratios", quantities(r.ratios)},
            {"masses", quantities(r.masses)},
            {"max_ratio", quantity(r.max_ratio)},
            {"ratios_bounded", r.ratios_bounded},
            {"masses_unbounded", r.masses_unbounded},
            {"pass", r.pass}};
}

Json to_json(const SingularityReport& r)
{
    Json pts = Json::array();
    for (const auto& p : r.points)
        pts.push_back({{"y", point(p.y)}, {"completeness", p.completeness}, {"minimality", p.minimality}, {"reason", p.reason}});
    return {{"points", pts},         {"complete", r.complete}, {"minimal", r.minimal},
            {"degenerate", r.degenerate}, {"unique", opt_point(r.unique)}, {"note", r.note}};
}

Json to_json(const MaximalFunction& M)
{
    Json j;
    j["m"] = M.m;
    j["weight"] = M.weight.spec();
    j["unit_only"] = M.unit_only;
    j["L"] = M.L;
    j["exact"] = M.exact;
    j["function"] = M.exact ? step(M.body, M.m) : step(M.body_real, M.m);
    j["pos_mass"] = quantity(M.pos_mass);
    j["neg_mass"] = quantity(M.neg_mass);
    if (!M.unit_only) {
        Json tails = Json::array();
        for (long k = M.L + 1; k <= M.L + 3; ++k)
            tails.push_back({{"interval", segment(Segment::closed(m_power(M.m, k - 1), m_power(M.m, k)))},
                             {"value", quantity(M.tail_value(k, true))}});
        j["tails_positive"] = tails;
        j["tail_rule"] = "on [m^(k-1), m^k), k > L: integral of |f| w over the half divided by w([0, m^k])";
    }
    return j;
}

Json to_json(const Weak11Report& r)
{
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"lambda", rational(row.lambda)}, {"lhs", quantity(row.lhs)}, {"rhs", quantity(row.rhs)}, {"pass", row.pass}});
    return {{"rows", rows}, {"pass", r.pass}};
}

Json to_json(const StrongLpReport& r)
{
    return {{"p", r.p},           {"lhs", quantity(r.lhs)}, {"rhs", quantity(r.rhs)},
            {"ratio", quantity(r.ratio)}, {"constant", r.constant}, {"pass", r.pass}};
}

Json to_json(const EquivalenceReport& r)
{
    return {{"p", r.p},
            {"trials", r.trials},
            {"max_ratio", quantity(r.max_ratio)},
            {"extremal_lower_bound", quantity(r.extremal_lower_bound)},
            {"extremal_witness", opt_segment(r.extremal_witness)},
            {"truncated_lower_bounds", quantities(r.truncated_lower_bounds)},
            {"mp_holds", r.mp_holds},
            {"unbounded_certified", r.unbounded_certified},
            {"consistent", r.consistent}};
}

Json to_json(const CZResult& r)
{
    Json cells = Json::array();
    Json eta = Json::array();
    for (const auto& c : r.cells) cells.push_back({rational(c.left()), rational(c.right())});
    for (const auto& e : r.eta) eta.push_back(rational(e));
    return {{"m", r.m},          {"lambda", rational(r.lambda)}, {"cells", cells},
            {"eta", eta},        {"omega_measure", rational(r.omega_measure)},
            {"g", step(r.g, r.m)}, {"b", step(r.b, r.m)}};
}

Json to_json(const CZReport& r)
{
    Json props = Json::object();
    for (const auto& p : r.properties) props[p.name] = {{"pass", p.pass}, {"witness", p.witness}};
    return {{"properties", props}, {"pass", r.pass}};
}

Json to_json(const SlopeInterval& s)
{
    return {{"slope", s.slope}, {"lo", s.lo}, {"hi", s.hi}, {"flat", s.flat}};
}

Json to_json(const DepthRatios& d, bool include_samples)
{
    Json j{{"depth", d.depth},
           {"sup_signflip", d.sup_signflip},
           {"sup_square", d.sup_square},
           {"min_square", d.min_square},
           {"samples", d.signflip.size()}};
    if (include_samples) {
        j["signflip"] = list(d.signflip);
        j["square"] = list(d.square);
    }
    return j;
}

Json to_json(const SignFlipWeakReport& r)
{
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"lambda", rational(row.lambda)},
                        {"max_measure", row.max_measure},
                        {"bound", rational(row.bound)},
                        {"violations", row.violations}});
    return {{"m", r.m},
            {"trials", r.trials},
            {"exact", r.exact},
            {"l1", rational(r.l1)},
            {"rows", rows},
            {"violations", r.violations},
            {"max_ratio", r.max_ratio},
            {"max_isometry_error", r.max_isometry_error},
            {"isometry_exact", r.isometry_exact},
            {"pass", r.pass}};
}

Json to_json(const NormEquivalenceReport& r)
{
    Json depths = Json::array();
    for (const auto& d : r.depths) depths.push_back(to_json(d, false));
    return {{"weight", r.weight},
            {"p", r.p},
            {"m", r.m},
            {"trials", r.trials},
            {"seed", r.seed},
            {"depths", depths},
            {"trend", to_json(r.trend)},
            {"mp", to_json(r.mp)},
            {"witness_ratios", list(r.witness_ratios)},
            {"witness_growing", r.witness_growing},
            {"verdict", r.verdict}};
}

Json to_json(const PointedExperimentReport& r)
{
    Json depths = Json::array();
    for (const auto& d : r.depths) depths.push_back(to_json(d, false));
    return {{"weight", r.weight},
            {"p", r.p},
            {"m", r.m},
            {"y", point(r.y)},
            {"trials", r.trials},
            {"seed", r.seed},
            {"hypotheses_met", r.hypotheses_met},
            {"reason", r.reason},
            {"mp_off_point", to_json(r.mp_off_point)},
            {"mp_y", to_json(r.mp_y)},
            {"depths", depths},
            {"trend", to_json(r.trend)},
            {"verdict", r.verdict}};
}

Json to_json(const ScaleSumReport& r)
{
    return {{"m", r.m},           {"K", r.K},           {"points", r.points},
            {"max_sum", r.max_sum}, {"argmax", r.argmax}, {"monotone", r.monotone},
            {"origin_max", r.origin_max}, {"pass", r.pass}};
}

Json to_json(const TranslatesReport& r)
{
    return {{"t", r.t}, {"J", r.J}, {"sum", r.sum}, {"tail_bound", r.tail_bound}, {"pass", r.pass}};
}

Json to_json(const AnnihilatorReport& r)
{
    Json basis = Json::array();
    for (const auto& v : r.basis) basis.push_back(list(v));
    return {{"m", r.m},
            {"N", r.N},
            {"depth", r.depth},
            {"two_sided", r.two_sided},
            {"with_scaling", r.with_scaling},
            {"unknowns", r.unknowns},
            {"constraints", r.constraints},
            {"dimension", r.dimension},
            {"exact_dimension", r.exact_dimension ? Json(*r.exact_dimension) : Json(nullptr)},
            {"indicator_error", r.indicator_error},
            {"smallest_kept_singular", r.smallest_kept_singular},
            {"largest_null_singular", r.largest_null_singular},
            {"basis", basis}};
}

Json to_json(const CMReport& r)
{
    return {{"half", r.half}, {"classifier", to_json(r.classifier)}, {"y", opt_point(r.y)}};
}

Json to_json(const HalfVerdict& r)
{
    Json checks = Json::array();
    for (const auto& c : r.singular_point_checks) checks.push_back(to_json(c));
    return {{"half", r.half},
            {"cm", to_json(r.cm)},
            {"mp", r.mp ? to_json(*r.mp) : Json(nullptr)},
            {"mp_y", r.mp_y ? to_json(*r.mp_y) : Json(nullptr)},
            {"singular_point_checks", checks},
            {"unconditional", to_string(r.unconditional)},
            {"exact", r.exact},
            {"evidence", r.evidence}};
}

Json to_json(const BasisVerdict& r)
{
    return {{"weight", r.weight},
            {"p", r.p},
            {"m", r.m},
            {"depth", r.depth},
            {"complete", r.complete},
            {"minimal", r.minimal},
            {"schauder_basis", to_string(r.schauder)},
            {"unconditional", to_string(r.unconditional)},
            {"y1", opt_point(r.y1)},
            {"y2", opt_point(r.y2)},
            {"pos", to_json(r.pos)},
            {"neg", to_json(r.neg)},
            {"exact", r.exact},
            {"statement_level", r.statement_level},
            {"evidence", r.evidence}};
}

Json to_json(const HalflineReport& r)
{
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"N", row.N}, {"tail_factor", quantity(row.tail_factor)}, {"ratios", to_json(row.ratios, false)}});
    return {{"weight", r.weight},
            {"p", r.p},
            {"m", r.m},
            {"hypotheses_met", r.hypotheses_met},
            {"reason", r.reason},
            {"y", opt_point(r.y)},
            {"branch", r.branch},
            {"depth", r.depth},
            {"trials", r.trials},
            {"rows", rows},
            {"trend", to_json(r.trend)},
            {"verdict", r.verdict}};
}

Json to_json(const CompletenessResidual& r)
{
    return {{"m", r.m},
            {"l", r.l},
            {"p", r.p},
            {"stated", r.stated},
            {"closed_form", r.closed_form},
            {"projection", r.projection},
            {"projection_vs_closed_form", r.projection_vs_closed_form},
            {"projection_vs_stated", r.projection_vs_stated}};
}

namespace {

template <class V> Json expansion_json(const Expansion<V>& e, bool exact)
{
    Json coeffs = Json::array();
    for (long l = 0; l <= e.cutoff; ++l) {
        CoeffIndex c = decode(l, e.m);
        Json row{{"l", l}, {"nu", c.nu}, {"k", c.k}, {"j", c.j}, {"a", e.coefficient(l)}};
        if constexpr (std::is_same_v<V, Rational>) row["reduced"] = rational(e.reduced[static_cast<std::size_t>(l)]);
        else row["reduced"] = e.reduced[static_cast<std::size_t>(l)];
        coeffs.push_back(row);
    }
    return {{"m", e.m},
            {"cutoff", e.cutoff},
            {"exact", exact},
            {"pointed", e.pointed},
            {"point", opt_point(e.point)},
            {"weight", e.weight_spec},
            {"coefficients", coeffs},
            {"convention", "a_l = m^(k/2) * reduced_l"}};
}

} // namespace

Json to_json(const Expansion<Rational>& e) { return expansion_json(e, true); }
Json to_json(const Expansion<double>& e) { return expansion_json(e, false); }

Json schemas()
{
    auto obj = [](std::initializer_list<std::pair<const char*, const char*>> fields) {
        Json props = Json::object();
        Json req = Json::array();
        for (const auto& [name, type] : fields) {
            props[name] = {{"type", type}};
            req.push_back(name);
        }
        return Json{{"type", "object"}, {"properties", props}, {"required", req}};
    };
    Json s;
    s["$schema"] = "https://json-schema.org/draft/2020-12/schema";
    s["step_function"] = obj({{"m", "integer"}, {"breakpoints", "array"}, {"values", "array"}});
    s["weight_report"] = obj({{"condition", "string"}, {"p", "number"}, {"m", "integer"}, {"region", "string"},
                              {"weight", "string"}, {"per_depth", "array"}, {"verdict", "string"},
                              {"trend", "string"}, {"evidence", "string"}, {"proof", "boolean"}});
    s["cz"] = obj({{"result", "object"}, {"report", "object"}, {"config", "object"}});
    s["maximal"] = obj({{"maximal", "object"}, {"config", "object"}});
    s["expand"] = obj({{"expansion", "object"}, {"config", "object"}});
    s["uncond"] = obj({{"experiment", "object"}, {"config", "object"}, {"seed", "integer"}, {"version", "string"}});
    s["verdict"] = obj({{"verdict", "object"}, {"config", "object"}});
    s["annihilator"] = obj({{"annihilator", "object"}, {"config", "object"}});
    s["wavelet_ineq"] = obj({{"scale_sum", "object"}, {"config", "object"}});
    s["report"] = obj({{"sections", "object"}, {"config", "object"}, {"seed", "integer"}, {"version", "string"}});
    s["quantity"] = {{"oneOf", Json::array({Json{{"type", "string"}, {"pattern", "^-?[0-9]+/[0-9]+$"}},
                                            Json{{"type", "number"}}, Json{{"const", "Divergent"}}})}};
    return s;
}

} // namespace mhaar::io
