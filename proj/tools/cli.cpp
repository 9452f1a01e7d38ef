#include "cli.hpp"

#include "CLI11.hpp"
#include "mhaar/errors.hpp"
#include "mhaar/io.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace mhaar::cli {

namespace {

using io::Json;

struct Outputs {
    std::string out_path;
    std::string csv_path;
};

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty()) {
        out << text << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw InvalidArgument("cannot write " + path);
    f << text << '\n';
}

void write_csv(const std::string& path, const std::vector<std::vector<std::string>>& rows)
{
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw InvalidArgument("cannot write " + path);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << row[i];
        f << '\n';
    }
}

std::string num(double d)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

std::string qtext(const Quantity& q) { return q.is_exact() ? to_string(q.rational()) : (q.is_divergent() ? "Divergent" : num(q.value())); }

void check_m(int m)
{
    if (m < 2) throw InvalidArgument("--m must be at least 2");
}

HaarSystem system_for(int m, const std::string& matrix_path)
{
    check_m(m);
    if (matrix_path.empty()) return HaarSystem::canonical(m);
    std::ifstream f(matrix_path);
    if (!f) throw InvalidArgument("cannot open " + matrix_path);
    Json j;
    try {
        f >> j;
    } catch (const Json::exception& e) {
        throw InvalidArgument(std::string("malformed matrix JSON: ") + e.what());
    }
    const Json& rows = j.is_object() ? j.at("matrix") : j;
    Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) throw InvalidArgument("generator matrix must be square");
        for (std::size_t c = 0; c < rows.size(); ++c)
            A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c].get<double>();
    }
    if (A.rows() != m) throw InvalidArgument("matrix size does not match --m");
    return HaarSystem::from_matrix(A);
}

std::vector<std::string> g_args;

Json config_json(const std::string& command)
{
    Json c;
    c["command"] = command;
    c["args"] = g_args;
    return c;
}

Json wrap(const std::string& command, const std::string& key, Json body, std::optional<std::uint64_t> seed = {})
{
    Json j;
    j[key] = std::move(body);
    j["config"] = config_json(command);
    j["version"] = io::version();
    if (seed) j["seed"] = *seed;
    return j;
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidArgument("malformed number list: " + text);
        }
    }
    return out;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    g_args = args;
    CLI::App app{"m-band Haar wavelets on weighted L^p spaces"};
    app.require_subcommand(0, 1);
    bool json_schema = false;
    app.add_flag("--json-schema", json_schema, "Print the JSON schemas of all reports");
    Outputs o;
    auto add_outputs = [&](CLI::App* sub) {
        sub->add_option("--out", o.out_path, "Write JSON here instead of stdout");
        sub->add_option("--csv", o.csv_path, "Write CSV plot data here");
    };

    int m = 2;
    std::string in_path, matrix_path, weight_spec = "unit", point_text, region_text = "unit", lambda_text;
    double p = 2.0;
    long depth = 6, cutoff = -1, k = 0, jpos = 1, N = 1, K = 30, jmin = 1, jmax = 12;
    int trials = 500;
    std::optional<std::uint64_t> seed;
    std::string condition = "all", grid_text = "0.01:10:1000", ps_text = "1,2,3";
    bool one_sided = false, with_scaling = false;

    auto* gen = app.add_subcommand("gen", "Generator matrix of the m-th rank Haar system");
    gen->add_option("--m", m)->required();
    gen->add_option("--matrix", matrix_path, "Row-major JSON matrix to validate instead of the canonical one");
    add_outputs(gen);

    auto* expand = app.add_subcommand("expand", "Wavelet coefficients of a step function");
    expand->add_option("--m", m)->required();
    expand->add_option("--in", in_path)->required();
    expand->add_option("--cutoff", cutoff, "Largest index l (default: full expansion)");
    expand->add_option("--pointed", point_text, "Pointed coefficients at y (a/b:l|a/b:r)");
    expand->add_option("--weight", weight_spec);
    add_outputs(expand);

    auto* psum = app.add_subcommand("partial-sum", "Partial sum at n = mu_k + j(m-1)");
    psum->add_option("--m", m)->required();
    psum->add_option("--in", in_path)->required();
    psum->add_option("--k", k)->required();
    psum->add_option("--j", jpos)->required();
    psum->add_option("--pointed", point_text);
    add_outputs(psum);

    auto* maximal = app.add_subcommand("maximal", "m-adic maximal function");
    maximal->add_option("--in", in_path)->required();
    maximal->add_option("--m", m);
    maximal->add_option("--weight", weight_spec);
    maximal->add_option("--lambda", lambda_text, "Also check the weak (1,1) bound at this level (a/b)");
    add_outputs(maximal);

    auto* cz = app.add_subcommand("cz", "Calderon-Zygmund decomposition on [0,1]");
    cz->add_option("--in", in_path)->required();
    cz->add_option("--lambda", lambda_text)->required();
    cz->add_option("--m", m);
    cz->add_option("--p", ps_text, "Exponents for the cz6 check");
    add_outputs(cz);

    auto* cw = app.add_subcommand("check-weight", "Weight conditions M_p, M_p^y, M_inf");
    cw->add_option("--weight", weight_spec)->required();
    cw->add_option("--p", p);
    cw->add_option("--m", m);
    cw->add_option("--region", region_text);
    cw->add_option("--depth", depth);
    cw->add_option("--point", point_text);
    cw->add_option("--jmin", jmin);
    cw->add_option("--jmax", jmax);
    cw->add_option("--seed", seed);
    cw->add_option("--condition", condition)->check(CLI::IsMember({"mp", "mpy", "minf", "all"}));
    add_outputs(cw);

    auto* uncond = app.add_subcommand("uncond", "Sign-flip and square-function experiments");
    uncond->add_option("--weight", weight_spec);
    uncond->add_option("--p", p);
    uncond->add_option("--m", m);
    uncond->add_option("--point", point_text);
    uncond->add_option("--trials", trials);
    uncond->add_option("--depth", depth);
    uncond->add_option("--seed", seed)->required();
    add_outputs(uncond);

    auto* verdict = app.add_subcommand("verdict", "Unconditional basis verdict on the real line");
    verdict->add_option("--weight", weight_spec)->required();
    verdict->add_option("--p", p);
    verdict->add_option("--m", m);
    verdict->add_option("--depth", depth);
    add_outputs(verdict);

    auto* ann = app.add_subcommand("annihilator", "Null space of the wavelet constraints");
    ann->add_option("--m", m);
    ann->add_option("--N", N);
    ann->add_option("--depth", depth);
    ann->add_flag("--one-sided", one_sided);
    ann->add_flag("--with-scaling", with_scaling);
    add_outputs(ann);

    auto* ineq = app.add_subcommand("wavelet-ineq", "Scale-sum inequality for the Fourier transforms");
    ineq->add_option("--m", m);
    ineq->add_option("--K", K);
    ineq->add_option("--grid", grid_text, "lo:hi:n[:log]");
    add_outputs(ineq);

    auto* report = app.add_subcommand("report", "Battery of checks and experiments");
    report->add_option("--m", m);
    report->add_option("--trials", trials);
    report->add_option("--seed", seed)->required();
    add_outputs(report);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n' << app.help();
        return 1;
    }

    try {
        if (json_schema) {
            out << io::dump(io::schemas()) << '\n';
            return 0;
        }
        if (app.get_subcommands().empty()) {
            err << app.help();
            return 1;
        }
        auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();

        if (name == "gen") {
            HaarSystem sys = system_for(m, matrix_path);
            Json rows = Json::array();
            for (int r = 0; r < m; ++r) {
                Json row = Json::array();
                for (int c = 0; c < m; ++c) row.push_back(sys.matrix()(r, c));
                rows.push_back(row);
            }
            Json body;
            body["m"] = m;
            body["matrix"] = rows;
            auto val = validate_generator_matrix(sys.matrix());
            body["validation"] = {{"orthogonality_error", val.orthogonality_error},
                                  {"first_row_error", val.first_row_error}, {"ok", val.ok}};
            auto mom = moment_check(sys);
            body["moments"] = {{"max_abs", mom.max_abs}, {"pass", mom.pass}};
            if (sys.exact()) {
                Json ex = Json::array();
                for (int nu = 0; nu < m; ++nu) {
                    Json row = Json::array();
                    for (int s = 0; s < m; ++s) row.push_back(io::rational(sys.exact_value(nu, s)));
                    ex.push_back(row);
                }
                body["generator_values_exact"] = ex;
            }
            write_text(o.out_path, io::dump(wrap(name, "generators", body)), out);
            return 0;
        }

        if (name == "expand" || name == "partial-sum") {
            int fm = m;
            StepFunction f = io::load_step(in_path, &fm);
            HaarSystem sys = system_for(m, "");
            if (name == "expand") {
                long c = cutoff >= 0 ? cutoff : mu(f.depth(m), m);
                Json body;
                if (!point_text.empty()) {
                    TaggedPoint y = TaggedPoint::parse(point_text);
                    body = sys.exact() ? io::to_json(pointed_coefficients<Rational>(f, sys, y, c, weight_spec))
                                       : io::to_json(pointed_coefficients<double>(f, sys, y, c, weight_spec));
                } else {
                    body = sys.exact() ? io::to_json(analyze<Rational>(f, sys, c)) : io::to_json(analyze<double>(f, sys, c));
                }
                write_text(o.out_path, io::dump(wrap(name, "expansion", body)), out);
                return 0;
            }
            StepFunction s;
            if (!point_text.empty()) s = pointed_partial_sum_formula(f, m, TaggedPoint::parse(point_text), k, jpos);
            else s = partial_sum_kernel(f, m, k, jpos);
            write_text(o.out_path, io::dump(wrap(name, "partial_sum", io::step(s, m))), out);
            std::vector<std::vector<std::string>> rows{{"lo", "hi", "value"}};
            for (std::size_t i = 0; i < s.values().size(); ++i)
                rows.push_back({to_string(s.breakpoints()[i]), to_string(s.breakpoints()[i + 1]), to_string(s.values()[i])});
            write_csv(o.csv_path, rows);
            return 0;
        }

        if (name == "maximal") {
            check_m(m);
            StepFunction f = io::load_step(in_path);
            Weight w = io::parse_weight(weight_spec);
            MaximalFunction M = weighted_maximal(f, w, m);
            Json body = io::to_json(M);
            if (!lambda_text.empty()) body["weak11"] = io::to_json(weak11_verify(f, w, m, {parse_rational(lambda_text)}));
            write_text(o.out_path, io::dump(wrap(name, "maximal", body)), out);
            std::vector<std::vector<std::string>> rows{{"lo", "hi", "value"}};
            for (std::size_t i = 0; i < M.piece_val.size(); ++i)
                rows.push_back({to_string(M.piece_bp[i]), to_string(M.piece_bp[i + 1]), qtext(M.piece_val[i])});
            write_csv(o.csv_path, rows);
            return 0;
        }

        if (name == "cz") {
            check_m(m);
            StepFunction f = io::load_step(in_path);
            CZResult r = cz_decompose(f, parse_rational(lambda_text), m);
            Json body{{"result", io::to_json(r)}, {"report", io::to_json(cz_verify(r, parse_list(ps_text)))}};
            body["config"] = config_json(name);
            body["version"] = io::version();
            write_text(o.out_path, io::dump(body), out);
            std::vector<std::vector<std::string>> rows{{"lo", "hi", "eta"}};
            for (std::size_t i = 0; i < r.cells.size(); ++i)
                rows.push_back({to_string(r.cells[i].left()), to_string(r.cells[i].right()), to_string(r.eta[i])});
            write_csv(o.csv_path, rows);
            return 0;
        }

        if (name == "check-weight") {
            check_m(m);
            Weight w = io::parse_weight(weight_spec);
            Domain region = Domain::parse(region_text);
            std::optional<TaggedPoint> y;
            if (!point_text.empty()) y = TaggedPoint::parse(point_text);
            Json body = Json::object();
            std::vector<std::vector<std::string>> rows{{"condition", "level", "value"}};
            auto add_rows = [&](const WeightReport& r) {
                for (const auto& lc : r.per_depth) rows.push_back({r.condition, std::to_string(lc.level), qtext(lc.value)});
            };
            if (condition == "mp" || condition == "all") {
                auto r = check_mp(w, p, m, region, depth, y);
                add_rows(r);
                body["mp"] = io::to_json(r);
            }
            if (condition == "mpy" || (condition == "all" && y)) {
                if (!y) throw InvalidArgument("--condition mpy needs --point");
                auto r = check_mp_y(w, p, m, *y, region, jmin, jmax);
                add_rows(r);
                body["mpy"] = io::to_json(r);
            }
            if (condition == "minf" || condition == "all") body["minf"] = io::to_json(check_minfty(w, m, region, std::min(depth, 6L), seed.value_or(1)));
            if (condition != "all") {
                Json single = body.begin().value();
                single["config"] = config_json(name);
                single["version"] = io::version();
                write_text(o.out_path, io::dump(single), out);
            } else {
                write_text(o.out_path, io::dump(wrap(name, "reports", body)), out);
            }
            write_csv(o.csv_path, rows);
            return 0;
        }

        if (name == "uncond") {
            Weight w = io::parse_weight(weight_spec);
            HaarSystem sys = system_for(m, "");
            std::vector<long> depths;
            for (long d = std::max(1L, depth - 3); d <= depth; ++d) depths.push_back(d);
            Json body;
            std::vector<std::vector<std::string>> rows{{"depth", "sup_ratio"}};
            int code = 0;
            if (!point_text.empty()) {
                auto r = pointed_unconditional_experiment(w, p, sys, TaggedPoint::parse(point_text), trials, depths, *seed);
                body = io::to_json(r);
                for (const auto& d : r.depths) rows.push_back({std::to_string(d.depth), num(d.sup_signflip)});
                if (!r.hypotheses_met) code = 2;
            } else {
                auto r = norm_equivalence_experiment(w, p, sys, trials, depths, *seed);
                body = io::to_json(r);
                for (const auto& d : r.depths) rows.push_back({std::to_string(d.depth), num(d.sup_signflip)});
            }
            write_text(o.out_path, io::dump(wrap(name, "experiment", body, *seed)), out);
            write_csv(o.csv_path, rows);
            if (code == 2) err << "hypotheses not met: " << body.value("reason", std::string()) << '\n';
            return code;
        }

        if (name == "verdict") {
            check_m(m);
            Weight w = io::parse_weight(weight_spec);
            write_text(o.out_path, io::dump(wrap(name, "verdict", io::to_json(ucb_verdict(w, p, m, depth)))), out);
            return 0;
        }

        if (name == "annihilator") {
            HaarSystem sys = system_for(m, "");
            auto r = annihilator_basis(sys, N, depth, !one_sided, with_scaling);
            write_text(o.out_path, io::dump(wrap(name, "annihilator", io::to_json(r))), out);
            return 0;
        }

        if (name == "wavelet-ineq") {
            HaarSystem sys = system_for(m, "");
            std::vector<std::string> parts;
            std::stringstream ss(grid_text);
            std::string item;
            while (std::getline(ss, item, ':')) parts.push_back(item);
            if (parts.size() < 3 || parts.size() > 4 || (parts.size() == 4 && parts[3] != "log"))
                throw InvalidArgument("--grid must be lo:hi:n[:log]");
            std::vector<double> bounds = parse_list(parts[0] + "," + parts[1] + "," + parts[2]);
            auto xs = make_grid(bounds[0], bounds[1], static_cast<int>(bounds[2]), parts.size() == 4);
            auto r = scale_sum_inequality(sys, xs, K);
            write_text(o.out_path, io::dump(wrap(name, "scale_sum", io::to_json(r))), out);
            std::vector<std::vector<std::string>> rows{{"x", "sum"}};
            for (double x : xs) {
                double sum = 0;
                for (long kk = 0; kk <= K; ++kk)
                    for (int nu = 1; nu < m; ++nu)
                        sum += std::norm(fourier_transform(sys, nu, x * std::pow(static_cast<double>(m), -static_cast<double>(kk))));
                rows.push_back({num(x), num(sum)});
            }
            write_csv(o.csv_path, rows);
            return 0;
        }

        if (name == "report") {
            HaarSystem sys = system_for(m, "");
            Json sections;
            Json weights = Json::object();
            for (const std::string spec : {"unit", "power:c=0/1:r=1/2", "power:c=0/1:r=1", "power:c=0/1:r=2"}) {
                Weight w = io::parse_weight(spec);
                weights[spec] = {{"mp_unit", io::to_json(check_mp(w, 2.0, m, Domain{}, 8))},
                                 {"verdict", io::to_json(ucb_verdict(w, 2.0, m, 8))}};
            }
            sections["weights"] = weights;
            sections["annihilator"] = io::to_json(annihilator_basis(sys, 1, 2, true));
            sections["scale_sum"] = io::to_json(scale_sum_inequality(sys, make_grid(0.01, 10, 200), 30));
            sections["completeness"] = io::to_json(completeness_residual(m, 2, 2.0, sys));
            int small = std::min(trials, 100);
            sections["uncond_unit"] = io::to_json(norm_equivalence_experiment(Weight::unit(), 2.0, sys, small, {3, 4}, *seed));
            sections["uncond_pointed_x2"] = io::to_json(pointed_unconditional_experiment(
                io::parse_weight("power:c=0/1:r=2"), 2.0, sys, TaggedPoint::finite(0, Side::Right), small, {3, 4}, *seed));
            write_text(o.out_path, io::dump(wrap(name, "sections", sections, *seed)), out);
            return 0;
        }
        err << app.help();
        return 1;
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << '\n';
        return 2;
    } catch (const InvalidArgument& e) {
        err << "invalid input: " << e.what() << '\n';
        return 1;
    } catch (const Json::exception& e) {
        err << "invalid input: " << e.what() << '\n';
        return 1;
    }
}

} // namespace mhaar::cli
