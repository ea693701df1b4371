#include "gptcompat/cli.hpp"

#include "gptcompat/json_io.hpp"
#include "gptcompat/linalg.hpp"
#include "gptcompat/svg.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

namespace gptcompat::cli {

namespace {

namespace fs = std::filesystem;

/// A path to a space JSON file, or a generator spec such as "hypercube:2".
SpacePtr load_space(const std::string& arg)
{
    if (fs::exists(arg))
        return space_from_json(read_json_file(arg));
    try {
        return generate_space(SpaceSpec::parse(arg));
    } catch (const GeometryError&) {
        throw ParseError("cannot open " + arg);
    }
}

AffineFunctional load_functional(const std::string& path, const SpacePtr& space)
{
    return functional_from_json(read_json_file(path), space);
}

Effect load_effect(const std::string& path, const SpacePtr& space)
{
    AffineFunctional f = load_functional(path, space);
    if (!validate_effect(f))
        throw GeometryError(path + ": not an effect (values must lie in [0,1] on every vertex)");
    return Effect(std::move(f));
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ParseError("cannot write " + path);
    f << text;
}

std::string describe(const AffineFunctional& f)
{
    return functional_to_json(f).dump();
}

void print_certificate(std::ostream& out, const InfeasibilityWitness& w)
{
    out << "farkas: " << to_json(w.farkas).dump() << '\n';
    out << "certificate: " << (w.verify() ? "verified" : "NOT VERIFIED") << '\n';
}

void print_joint(std::ostream& out, const JointFamily& joint)
{
    for (std::size_t k = 0; k < joint.size(); ++k)
        for (std::size_t j = 0; j < joint[k].size(); ++j)
            out << "h[" << k << "][" << j << "] = " << describe(joint[k][j]) << '\n';
}

/// Nonzero weights w with sum w_i = 0 and sum w_i v_i = 0, or empty when the
/// vertices are affinely independent.
RationalVector affine_dependency(const StateSpace& space)
{
    const auto& vs = space.vertices();
    const std::size_t d = space.dimension();
    Matrix lifted(vs.size(), d + 1);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        lifted(i, 0) = 1;
        for (std::size_t k = 0; k < d; ++k)
            lifted(i, k + 1) = vs[i][k];
    }
    const auto basis = independent_rows(lifted);
    if (basis.size() == vs.size())
        return {};
    std::size_t extra = 0;
    while (std::find(basis.begin(), basis.end(), extra) != basis.end())
        ++extra;
    Matrix cols(d + 1, basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c)
        for (std::size_t k = 0; k <= d; ++k)
            cols(k, c) = lifted(basis[c], k);
    const RationalVector coef = *solve_any(cols, lifted.row(extra));
    RationalVector w(vs.size(), Rational(0));
    for (std::size_t c = 0; c < basis.size(); ++c)
        w[basis[c]] = coef[c];
    w[extra] = -1;
    return w;
}

std::size_t scan_threads()
{
    if (const char* env = std::getenv("GPTCOMPAT_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return v;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

int verdict_exit(const CompatibilityVerdict& v)
{
    return is_compatible(v) ? Affirmative : Negative;
}

int print_verdict(std::ostream& out, const CompatibilityVerdict& v, bool json, const RobustnessResult* robust)
{
    if (json) {
        Json j = verdict_to_json(v);
        if (robust)
            j["robustness"] = robustness_to_json(*robust);
        out << j.dump(2) << '\n';
        return verdict_exit(v);
    }
    if (const auto* c = std::get_if<Compatible>(&v)) {
        out << "compatible: true\n";
        print_joint(out, c->joint);
    } else {
        out << "compatible: false\n";
        print_certificate(out, std::get<Incompatible>(v).certificate);
    }
    if (robust)
        out << "lambda_star = " << to_string(robust->lambda_star) << '\n';
    return verdict_exit(v);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact compatibility and order-geometry checks on polytopic state spaces", "gptcompat"};
    app.require_subcommand(1);

    std::string space_arg, a_path, b_path, u_path, v1_path, v2_path, out_path, spec_text;
    bool robustness = false, json = false;
    std::size_t pairs = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> effect_paths;

    auto* check = app.add_subcommand("check-simplex", "Decide whether the state space is a simplex");
    check->add_option("space", space_arg, "space JSON file or generator spec")->required();
    check->add_flag("--json", json, "emit JSON");

    auto* compat = app.add_subcommand("compat", "Compatibility of two effects");
    compat->add_option("space", space_arg)->required();
    compat->add_option("a", a_path)->required();
    compat->add_option("b", b_path)->required();
    compat->add_flag("--robustness", robustness, "also report the largest compatible noise parameter");
    compat->add_flag("--json", json, "emit JSON");

    auto* joint = app.add_subcommand("joint", "Compatibility of two measurements");
    joint->add_option("space", space_arg)->required();
    joint->add_option("M", a_path)->required();
    joint->add_option("N", b_path)->required();
    joint->add_flag("--json", json, "emit JSON");

    auto* riesz = app.add_subcommand("riesz", "Riesz decomposition of u <= v1 + v2");
    riesz->add_option("space", space_arg)->required();
    riesz->add_option("u", u_path)->required();
    riesz->add_option("v1", v1_path)->required();
    riesz->add_option("v2", v2_path)->required();
    riesz->add_flag("--json", json, "emit JSON");

    auto* scan = app.add_subcommand("scan", "Sampled plus deterministic search for incompatible effect pairs");
    scan->add_option("--space", spec_text, "simplex:N, hypercube:N, cross:N or random:POINTS:DIM:SEED")->required();
    scan->add_option("--pairs", pairs, "sampled pairs")->required()->check(CLI::PositiveNumber);
    scan->add_option("--seed", seed)->required();
    scan->add_option("--out", out_path, "CSV report")->required();

    auto* render = app.add_subcommand("render", "SVG figure of a 2-D space with effect level lines");
    render->add_option("space", space_arg)->required();
    render->add_option("--effect", effect_paths, "effect JSON (repeatable)");
    render->add_option("-o", out_path, "SVG output")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Affirmative : UsageError;
    }

    try {
        if (check->parsed()) {
            const SpacePtr space = load_space(space_arg);
            const bool simplex = is_simplex(*space);
            const RationalVector dep = simplex ? RationalVector{} : affine_dependency(*space);
            if (json) {
                Json j{{"simplex", simplex}, {"space", space_to_json(*space)}};
                if (!simplex)
                    j["affine_dependency"] = to_json(dep);
                out << j.dump(2) << '\n';
            } else {
                out << "simplex: " << (simplex ? "true" : "false") << '\n';
                if (!simplex)
                    out << "affine_dependency: " << to_json(dep).dump() << '\n';
            }
            return simplex ? Affirmative : Negative;
        }
        if (compat->parsed()) {
            const SpacePtr space = load_space(space_arg);
            const Effect a = load_effect(a_path, space);
            const Effect b = load_effect(b_path, space);
            const CompatibilityVerdict v = compatible_2outcome(a, b);
            if (robustness) {
                const RobustnessResult r = incompatibility_robustness(a, b);
                return print_verdict(out, v, json, &r);
            }
            return print_verdict(out, v, json, nullptr);
        }
        if (joint->parsed()) {
            const SpacePtr space = load_space(space_arg);
            const Measurement m = measurement_from_json(read_json_file(a_path), space);
            const Measurement n = measurement_from_json(read_json_file(b_path), space);
            return print_verdict(out, compatible_general(m, n), json, nullptr);
        }
        if (riesz->parsed()) {
            const SpacePtr space = load_space(space_arg);
            const RieszInstance inst(load_functional(u_path, space), load_functional(v1_path, space),
                                     load_functional(v2_path, space));
            const RieszResult r = riesz_decompose(inst);
            const bool ok = std::holds_alternative<RieszDecomposition>(r);
            if (json) {
                out << riesz_result_to_json(r).dump(2) << '\n';
            } else if (ok) {
                const auto& d = std::get<RieszDecomposition>(r);
                out << "decomposable: true\nu1 = " << describe(d.u1) << "\nu2 = " << describe(d.u2) << '\n';
            } else {
                out << "decomposable: false\n";
                print_certificate(out, std::get<InfeasibilityWitness>(r));
            }
            return ok ? Affirmative : Negative;
        }
        if (scan->parsed()) {
            const SpaceSpec spec = SpaceSpec::parse(spec_text);
            const SpacePtr space = generate_space(spec);
            ScanOptions options;
            options.threads = scan_threads();
            const ScanReport report = theorem_scan(space, pairs, seed, spec.id(), options);
            std::string witness_path;
            if (report.first_witness) {
                witness_path = fs::path(out_path).replace_extension(".witness.json").string();
                Json j = report_to_json(report);
                j["space"] = space_to_json(*space);
                write_file(witness_path, j.dump(2) + "\n");
            }
            write_file(out_path, report_csv_header() + "\n" + report_csv_row(report, witness_path) + "\n");
            const bool simplex = is_simplex(*space);
            out << "space: " << report.space_id << '\n'
                << "simplex: " << (simplex ? "true" : "false") << '\n'
                << "pairs_tested: " << report.pairs_tested << '\n'
                << "incompatible_count: " << report.incompatible_count << '\n'
                << "agrees: " << (simplex == (report.incompatible_count == 0) ? "true" : "false") << '\n';
            if (!witness_path.empty())
                out << "witness: " << witness_path << '\n';
            return report.incompatible_count == 0 ? Affirmative : Negative;
        }
        if (render->parsed()) {
            const SpacePtr space = load_space(space_arg);
            if (space->dimension() != 2)
                throw GeometryError("render: space has dimension " + std::to_string(space->dimension()) + ", need 2");
            std::vector<AffineFunctional> effects;
            for (const auto& p : effect_paths)
                effects.push_back(load_effect(p, space).functional());
            write_file(out_path, render_svg(*space, effects));
            return Affirmative;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    }
    return UsageError;
}

} // namespace gptcompat::cli
