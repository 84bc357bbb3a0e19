// Command-line front door: generators, contact counting, bound evaluation,
// the constants ledger, lattice reduction, verification checks, and the
// best-known table search, all over JSON/XYZ/CSV files.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "contact/bounds.hpp"
#include "contact/io.hpp"
#include "contact/lattice.hpp"
#include "contact/packing.hpp"
#include "contact/search.hpp"
#include "contact/verify.hpp"

namespace {

using nlohmann::json;
using namespace contact;

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitUsage = 64;

struct Emitter {
    std::string command_line;
    std::string output_path;  // empty = stdout
    json config = json::object();
    std::vector<std::string> inputs;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void emit(const std::string& text, const std::vector<std::string>& extra_outputs = {}) const {
        if (output_path.empty()) {
            std::cout << text;
            return;
        }
        write_text_file(output_path, text);
        std::vector<std::string> outputs = {output_path};
        outputs.insert(outputs.end(), extra_outputs.begin(), extra_outputs.end());
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const json manifest = {{"command", command_line}, {"config", config},
                               {"version", kVersion},     {"inputs", inputs},
                               {"outputs", outputs},      {"wall_time_s", round12(wall)}};
        write_text_file(output_path + ".manifest.json", manifest.dump(2) + "\n");
    }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// packing payloads stay on one line; reports are pretty-printed
std::string dump_packing(const json& j) { return j.dump() + "\n"; }

Packing load_packing(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return packing_from_json(json::parse(os.str()));
    }
    return packing_from_json(load_json(path));
}

// accepts plain numbers plus the exact tokens that keep golden runs readable
double parse_radius(const std::string& token) {
    if (token == "sqrt2") return std::numbers::sqrt2;
    return std::stod(token);
}

double parse_angle(const std::string& token) {
    if (token == "pi/6") return kPi / 6.0;
    if (token == "pi/4") return kPi / 4.0;
    if (token == "pi/3") return kPi / 3.0;
    if (token == "pi/2") return kPi / 2.0;
    return std::stod(token);
}

std::vector<Vec3> cuboctahedral_directions() {
    const Packing p = gen_cuboctahedron_13();
    return contact_directions(contact_graph(p), p, 0);
}

json packing_summary(const Packing& p, double tol) {
    const ContactGraph g = contact_graph(p, tol);
    const DegreePartition part = degree_partition(g);
    json degrees = json::object();
    for (int d : g.degree) {
        const std::string key = std::to_string(d);
        degrees[key] = degrees.value(key, 0) + 1;
    }
    int max_degree = 0;
    for (int d : g.degree) max_degree = std::max(max_degree, d);
    return {{"n", g.n},
            {"contact_number", g.contact_number()},
            {"representation", p.rep == Rep::fcc ? "fcc" : "real"},
            {"degrees", degrees},
            {"max_degree", max_degree},
            {"partition", {{"m", part.m}, {"k", part.k}, {"rest", part.rest}}}};
}

int run(int argc, char** argv) {
    CLI::App app{"contact numbers of congruent unit-sphere packings"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int workers = 1;
    long long samples = 0;  // 0 = per-operation default
    double tolerance = kTolerance;
    app.add_option("--seed", seed, "seed for stochastic estimates");
    app.add_option("--workers", workers, "worker threads for sampling loops");
    app.add_option("--samples", samples, "sample count override");
    app.add_option("--tolerance", tolerance, "contact tolerance for real coordinates");

    std::string command_line;
    for (int i = 0; i < argc; ++i) command_line += std::string(i ? " " : "") + argv[i];

    // ---- generate ----------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "construct a packing");
    int gen_octahedron = 0, gen_augmented = 0;
    bool gen_double = false, gen_cubocta = false;
    double gen_ball = 0.0;
    std::string gen_out;
    gen->add_option("--octahedron", gen_octahedron, "octahedral fcc cluster with k points per edge");
    gen->add_flag("--double-oct", gen_double, "two octahedra glued along a face (9 balls)");
    gen->add_option("--augmented", gen_augmented, "double octahedron plus 1..3 apex balls");
    gen->add_flag("--cubocta13", gen_cubocta, "cuboctahedron vertices plus center (13 balls)");
    gen->add_option("--fcc-ball", gen_ball, "all fcc points within the given real radius");
    gen->add_option("-o,--output", gen_out, "output file (default stdout)");

    // ---- contacts ----------------------------------------------------------
    auto* contacts = app.add_subcommand("contacts", "contact graph summary of a packing");
    std::string contacts_in, contacts_out;
    contacts->add_option("file", contacts_in, "packing JSON ('-' for stdin)")->required();
    contacts->add_option("-o,--output", contacts_out, "output file (default stdout)");

    // ---- bounds ------------------------------------------------------------
    auto* bounds = app.add_subcommand("bounds", "evaluate a bound formula");
    std::string formula;
    long long bounds_n = 0;
    int bounds_d = 3;
    double bounds_tau = 12.0, bounds_delta = kPi / std::sqrt(18.0);
    std::string bounds_out;
    bounds->add_option("--formula", formula, "harborth|i|ii|iii|improved|conjectural|dimension")
        ->required();
    bounds->add_option("--n", bounds_n, "number of balls")->required();
    bounds->add_option("--d", bounds_d, "dimension (formula=dimension)");
    bounds->add_option("--tau", bounds_tau, "kissing number (formula=dimension)");
    bounds->add_option("--delta", bounds_delta, "packing density (formula=dimension)");
    bounds->add_option("-o,--output", bounds_out, "output file (default stdout)");

    // ---- constants ---------------------------------------------------------
    auto* constants = app.add_subcommand("constants", "recomputed constants ledger");
    std::string constants_format = "csv", constants_out;
    constants->add_option("--format", constants_format, "csv|json");
    constants->add_option("-o,--output", constants_out, "output file (default stdout)");

    // ---- reduce ------------------------------------------------------------
    auto* reduce = app.add_subcommand("reduce", "Selling-reduce a lattice to an obtuse superbase");
    std::string reduce_in, reduce_out;
    reduce->add_option("lattice", reduce_in, "lattice JSON (basis rows or Gram matrix)")->required();
    reduce->add_option("-o,--output", reduce_out, "output file (default stdout)");

    // ---- map-fcc -----------------------------------------------------------
    auto* mapfcc = app.add_subcommand("map-fcc", "contact-preserving map into the fcc lattice");
    std::string map_lattice, map_points, map_out;
    mapfcc->add_option("lattice", map_lattice, "lattice JSON")->required();
    mapfcc->add_option("points", map_points, "points JSON: {\"coords\": [[a,b,c],...]} in the "
                                             "reduced superbase basis")->required();
    mapfcc->add_option("-o,--output", map_out, "output file (default stdout)");

    // ---- verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "numerical verification checks");
    verify->require_subcommand(1);

    auto* v_cover = verify->add_subcommand("covering", "cap covering at a given enlargement");
    std::string cover_r, cover_packing, cover_out;
    int cover_vertex = 0;
    v_cover->add_option("--r", cover_r, "enlargement radius (number or 'sqrt2')")->required();
    v_cover->add_option("--packing", cover_packing, "take directions from this packing");
    v_cover->add_option("--vertex", cover_vertex, "vertex index for --packing");
    v_cover->add_option("-o,--output", cover_out, "output file (default stdout)");

    auto* v_molnar = verify->add_subcommand("molnar", "cap-density ratio of a configuration");
    std::string molnar_alpha, molnar_packing, molnar_out;
    int molnar_vertex = 0;
    v_molnar->add_option("--alpha", molnar_alpha, "cap angular radius (number or 'pi/4' style)")
        ->required();
    v_molnar->add_option("--packing", molnar_packing, "take directions from this packing");
    v_molnar->add_option("--vertex", molnar_vertex, "vertex index for --packing");
    v_molnar->add_option("-o,--output", molnar_out, "output file (default stdout)");

    auto* v_eq12 = verify->add_subcommand("eq12", "octahedral cluster contact identity");
    long long eq12_k = 0;
    std::string eq12_out;
    v_eq12->add_option("--k", eq12_k, "points per octahedron edge")->required();
    v_eq12->add_option("-o,--output", eq12_out, "output file (default stdout)");

    auto* v_density = verify->add_subcommand("density", "Monte Carlo density of enlarged balls");
    long long density_k = 0;
    std::string density_r, density_out;
    double density_bound = 0.0;
    v_density->add_option("--k", density_k, "octahedral cluster size parameter")->required();
    v_density->add_option("--r", density_r, "enlargement radius")->required();
    v_density->add_option("--bound", density_bound, "density bound (default chosen from r)");
    v_density->add_option("-o,--output", density_out, "output file (default stdout)");

    auto* v_surface = verify->add_subcommand("surface", "surface area of the enlarged union");
    long long surface_k = 0;
    std::string surface_r, surface_out;
    v_surface->add_option("--k", surface_k, "octahedral cluster size parameter")->required();
    v_surface->add_option("--r", surface_r, "enlargement radius")->required();
    v_surface->add_option("-o,--output", surface_out, "output file (default stdout)");

    auto* v_iso = verify->add_subcommand("isoperimetric", "isoperimetric inequality on estimates");
    long long iso_k = 0;
    std::string iso_r, iso_out;
    v_iso->add_option("--k", iso_k, "octahedral cluster size parameter")->required();
    v_iso->add_option("--r", iso_r, "enlargement radius")->required();
    v_iso->add_option("-o,--output", iso_out, "output file (default stdout)");

    // ---- search ------------------------------------------------------------
    auto* search = app.add_subcommand("search", "search for high-contact fcc packings");
    long long search_n = 0, search_table = 0;
    std::string search_strategy = "greedy+swap", search_out, search_dir;
    int search_iters = 500, search_restarts = 0;
    search->add_option("--n", search_n, "target ball count");
    search->add_option("--table", search_table, "emit the best-known table up to this n");
    search->add_option("--strategy", search_strategy, "greedy|greedy+swap");
    search->add_option("--swap-iterations", search_iters, "relocation attempts");
    search->add_option("--restarts", search_restarts, "extra randomized greedy runs");
    search->add_option("--out-dir", search_dir, "directory for witness files (table mode)");
    search->add_option("-o,--output", search_out, "output file (default stdout)");

    // ---- export ------------------------------------------------------------
    auto* exp = app.add_subcommand("export", "convert a packing file");
    std::string exp_format, exp_in, exp_out;
    exp->add_option("--format", exp_format, "json|xyz|csv")->required();
    exp->add_option("--in", exp_in, "packing JSON ('-' for stdin)")->required();
    exp->add_option("-o,--output", exp_out, "output file (default stdout)");

    // global options (--seed, --samples, ...) may follow the subcommand name
    const std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
        cmd->fallthrough();
        for (CLI::App* sub : cmd->get_subcommands([](CLI::App*) { return true; }))
            enable_fallthrough(sub);
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << app.help() << "\n";
        return kExitUsage;
    }

    Emitter emitter;
    emitter.command_line = command_line;
    emitter.config = {{"seed", seed}, {"workers", workers}, {"samples", samples},
                      {"tolerance", tolerance}};

    if (gen->parsed()) {
        emitter.output_path = gen_out;
        Packing p;
        if (gen_octahedron > 0) {
            p = gen_fcc_octahedron(gen_octahedron);
            emitter.config["generator"] = {{"octahedron", gen_octahedron}};
        } else if (gen_double) {
            p = gen_double_octahedron();
            emitter.config["generator"] = "double-oct";
        } else if (gen_augmented > 0) {
            p = gen_augmented_double_octahedron(gen_augmented);
            emitter.config["generator"] = {{"augmented", gen_augmented}};
        } else if (gen_cubocta) {
            p = gen_cuboctahedron_13();
            emitter.config["generator"] = "cubocta13";
        } else if (gen_ball > 0.0) {
            std::vector<FccPoint> pts;
            const int m = static_cast<int>(std::floor(gen_ball / std::numbers::sqrt2));
            for (int a = -m; a <= m; ++a)
                for (int b = -m; b <= m; ++b)
                    for (int c = -m; c <= m; ++c)
                        if (((a + b + c) & 1) == 0 &&
                            2.0 * (a * a + b * b + c * c) <= gen_ball * gen_ball)
                            pts.push_back({a, b, c});
            p = Packing::from_fcc(std::move(pts));
            emitter.config["generator"] = {{"fcc-ball", gen_ball}};
        } else {
            throw std::domain_error("generate: pick one of --octahedron, --double-oct, "
                                    "--augmented, --cubocta13, --fcc-ball");
        }
        emitter.emit(dump_packing(packing_to_json(p)));
        return kExitOk;
    }

    if (contacts->parsed()) {
        emitter.output_path = contacts_out;
        emitter.inputs = {contacts_in};
        emitter.emit(dump(packing_summary(load_packing(contacts_in), tolerance)));
        return kExitOk;
    }

    if (bounds->parsed()) {
        emitter.output_path = bounds_out;
        emitter.config["formula"] = formula;
        emitter.config["n"] = bounds_n;
        json out;
        if (formula == "harborth") {
            out = {{"formula", "harborth"}, {"n", bounds_n}, {"value", harborth_2d(bounds_n)}};
        } else if (formula == "i") {
            out = bound_report_to_json(bound_i(bounds_n));
        } else if (formula == "ii") {
            out = bound_report_to_json(bound_ii(bounds_n));
        } else if (formula == "iii") {
            long long k = -1;
            for (long long c = 2; fcc_octahedron_count(c) <= bounds_n; ++c)
                if (fcc_octahedron_count(c) == bounds_n) k = c;
            if (k < 0)
                throw std::domain_error("bounds: formula iii needs n = k(2k^2+1)/3 for some k >= 2");
            out = bound_report_to_json(bound_iii_lower(bounds_n, k));
        } else if (formula == "improved") {
            out = bound_report_to_json(bound_improved(bounds_n));
        } else if (formula == "conjectural") {
            out = bound_report_to_json(bound_conjectural(bounds_n));
        } else if (formula == "dimension") {
            const double v = general_dim_bound(bounds_n, bounds_tau, bounds_delta, bounds_d);
            const double coeff = std::pow(2.0, -bounds_d) *
                                 std::pow(bounds_delta, -double(bounds_d - 1) / bounds_d);
            out = {{"formula", "dimension"}, {"n", bounds_n},     {"d", bounds_d},
                   {"tau", round12(bounds_tau)}, {"delta", round12(bounds_delta)},
                   {"coefficient", round12(coeff)}, {"value", round12(v)}};
        } else {
            throw std::domain_error("bounds: unknown formula '" + formula + "'");
        }
        emitter.emit(dump(out));
        return kExitOk;
    }

    if (constants->parsed()) {
        emitter.output_path = constants_out;
        emitter.config["format"] = constants_format;
        const auto ledger = derive_constants();
        if (constants_format == "csv")
            emitter.emit(constants_to_csv(ledger));
        else if (constants_format == "json")
            emitter.emit(dump(constants_to_json(ledger)));
        else
            throw std::domain_error("constants: format must be csv or json");
        return kExitOk;
    }

    if (reduce->parsed()) {
        emitter.output_path = reduce_out;
        emitter.inputs = {reduce_in};
        const LatticeBasis basis = lattice_from_json(load_json(reduce_in));
        const Superbase sb = selling_reduce(basis);
        const VoronoiVectorList vv = voronoi_vectors(sb);
        json out = superbase_to_json(sb);
        json vecs = json::array(), lens = json::array();
        for (int i = 0; i < 14; ++i) {
            vecs.push_back({round12(vv.vectors[i].x), round12(vv.vectors[i].y),
                            round12(vv.vectors[i].z)});
            lens.push_back(round12(vv.sq_lengths[i]));
        }
        out["voronoi_candidates"] = vecs;
        out["voronoi_sq_lengths"] = lens;
        out["count_length_2"] = vv.count_length(2.0);
        out["min_length"] = round12(vv.min_length());
        out["abs_det"] = round12(std::abs(sb.basis_det()));
        emitter.emit(dump(out));
        return kExitOk;
    }

    if (mapfcc->parsed()) {
        emitter.output_path = map_out;
        emitter.inputs = {map_lattice, map_points};
        const LatticeBasis basis = lattice_from_json(load_json(map_lattice));
        const Superbase sb = selling_reduce(basis);
        const json pts = load_json(map_points);
        std::vector<std::array<long long, 3>> coords;
        for (const auto& c : pts.at("coords")) {
            if (!c.is_array() || c.size() != 3 || !c[0].is_number_integer() ||
                !c[1].is_number_integer() || !c[2].is_number_integer())
                throw std::domain_error("map-fcc: coords must be integer triples");
            coords.push_back({c[0].get<long long>(), c[1].get<long long>(), c[2].get<long long>()});
        }
        const auto image = map_to_fcc(sb, coords);
        emitter.emit(dump_packing(packing_to_json(Packing::from_fcc(image))));
        return kExitOk;
    }

    if (verify->parsed()) {
        bool pass = true;
        json report;

        if (v_cover->parsed()) {
            emitter.output_path = cover_out;
            const double r = parse_radius(cover_r);
            std::vector<Vec3> dirs;
            if (!cover_packing.empty()) {
                emitter.inputs = {cover_packing};
                const Packing p = load_packing(cover_packing);
                dirs = contact_directions(contact_graph(p), p, cover_vertex);
            } else {
                dirs = cuboctahedral_directions();
            }
            const int n_samples = samples > 0 ? static_cast<int>(samples) : 200000;
            const CoveringCheck chk = covering_check(dirs, r, n_samples);
            pass = chk.covered;
            report = verification_report(
                "covering",
                {{"r", round12(r)}, {"directions", dirs.size()}, {"samples", n_samples}},
                {{"covering_radius", round12(chk.covering_radius)}},
                {{"cap_angle", round12(chk.cap_angle)}}, chk.margin, pass);
        } else if (v_molnar->parsed()) {
            emitter.output_path = molnar_out;
            const double alpha = parse_angle(molnar_alpha);
            std::vector<Vec3> dirs;
            if (!molnar_packing.empty()) {
                emitter.inputs = {molnar_packing};
                const Packing p = load_packing(molnar_packing);
                dirs = contact_directions(contact_graph(p), p, molnar_vertex);
            } else {
                dirs = cuboctahedral_directions();
            }
            const int n_samples = samples > 0 ? static_cast<int>(samples) : 200000;
            const double ratio = molnar_ratio({dirs, alpha}, n_samples);
            const double bound = 0.89332;
            pass = ratio < bound;
            report = verification_report(
                "molnar",
                {{"alpha", round12(alpha)}, {"directions", dirs.size()}, {"samples", n_samples}},
                {{"ratio", round12(ratio)}}, {{"density_bound", bound}}, bound - ratio, pass);
        } else if (v_eq12->parsed()) {
            emitter.output_path = eq12_out;
            const OctahedralIdentity rep = check_octahedral_identity(eq12_k);
            pass = rep.pass;
            report = verification_report(
                "eq12", {{"k", rep.k}, {"n", rep.n}},
                {{"counted", rep.counted},
                 {"cubic_form", rep.cubic_form},
                 {"cluster_form", rep.cluster_form},
                 {"breakdown_form", rep.breakdown_form}},
                {{"expected", rep.cubic_form}}, 0.0, pass);
        } else if (v_density->parsed()) {
            emitter.output_path = density_out;
            const double r = parse_radius(density_r);
            double bound = density_bound;
            if (bound <= 0.0) {
                if (std::abs(r - std::numbers::sqrt2) < 1e-12)
                    bound = kPi / std::sqrt(18.0);
                else if (std::abs(r - 1.81383) < 1e-12)
                    bound = 0.7785;
                else if (std::abs(r - 1.58731) < 1e-12)
                    bound = 0.7547;
                else
                    throw std::domain_error("verify density: no default bound for this r; "
                                            "pass --bound");
            }
            const long long n_samples = samples > 0 ? samples : 10000000;
            const Packing p = gen_fcc_octahedron(static_cast<int>(density_k));
            const VolumeEstimate est = union_volume_mc(p, r, n_samples, seed, workers);
            pass = est.density_ratio < bound;
            report = verification_report(
                "density",
                {{"k", density_k}, {"r", round12(r)}, {"samples", n_samples}, {"seed", seed}},
                {{"volume", round12(est.volume)},
                 {"stderr_volume", round12(est.stderr_volume)},
                 {"density_ratio", round12(est.density_ratio)},
                 {"stderr_ratio", round12(est.stderr_ratio)}},
                {{"density_bound", round12(bound)}}, bound - est.density_ratio, pass);
        } else if (v_surface->parsed()) {
            emitter.output_path = surface_out;
            const double r = parse_radius(surface_r);
            const int per_ball = samples > 0 ? static_cast<int>(samples) : 50000;
            const Packing p = gen_fcc_octahedron(static_cast<int>(surface_k));
            const int contacts_count = contact_graph(p).contact_number();
            const SurfaceEstimate est = union_surface(p, r, per_ball, workers);
            json reference = json::object();
            double margin = 0.0;
            if (std::abs(r - std::numbers::sqrt2) < 1e-12) {
                const double bound =
                    8.0 * kPi * static_cast<double>(p.size()) - (4.0 * kPi / 3.0) * contacts_count;
                pass = est.area <= bound * 1.01;
                reference = {{"area_bound", round12(bound)}};
                margin = bound - est.area;
            }
            report = verification_report(
                "surface",
                {{"k", surface_k}, {"r", round12(r)}, {"per_ball_samples", per_ball}},
                {{"area", round12(est.area)}, {"contacts", contacts_count}}, reference, margin,
                pass);
        } else if (v_iso->parsed()) {
            emitter.output_path = iso_out;
            const double r = parse_radius(iso_r);
            const long long n_samples = samples > 0 ? samples : 10000000;
            const Packing p = gen_fcc_octahedron(static_cast<int>(iso_k));
            const VolumeEstimate vol = union_volume_mc(p, r, n_samples, seed, workers);
            const SurfaceEstimate surf = union_surface(p, r, 50000, workers);
            const double tol = 3.0 * (2.0 * vol.stderr_volume / vol.volume + 0.005);
            pass = isoperimetric_check(vol.volume, surf.area, tol);
            const double lhs = 36.0 * kPi * vol.volume * vol.volume;
            const double rhs = surf.area * surf.area * surf.area;
            report = verification_report(
                "isoperimetric",
                {{"k", iso_k}, {"r", round12(r)}, {"samples", n_samples}, {"seed", seed}},
                {{"volume", round12(vol.volume)},
                 {"area", round12(surf.area)},
                 {"lhs_36pi_v2", round12(lhs)},
                 {"rhs_a3", round12(rhs)}},
                {{"tolerance", round12(tol)}}, rhs - lhs, pass);
        }

        emitter.emit(dump(report));
        return pass ? kExitOk : kExitVerifyFailed;
    }

    if (search->parsed()) {
        SearchConfig cfg;
        cfg.seed = seed;
        cfg.workers = workers;
        cfg.swap_iterations = search_iters;
        cfg.restarts = search_restarts;
        if (search_strategy == "greedy")
            cfg.strategy = SearchConfig::Strategy::greedy;
        else if (search_strategy == "greedy+swap")
            cfg.strategy = SearchConfig::Strategy::greedy_swap;
        else
            throw std::domain_error("search: strategy must be greedy or greedy+swap");
        emitter.config["strategy"] = search_strategy;
        emitter.config["swap_iterations"] = search_iters;
        emitter.config["restarts"] = search_restarts;

        if (search_table >= 2) {
            emitter.output_path = search_out;
            const BestKnownTable table = best_known_table(search_table, cfg);
            std::vector<std::string> witness_files(table.rows.size());
            std::vector<std::string> written;
            if (!search_dir.empty()) {
                std::filesystem::create_directories(search_dir);
                for (std::size_t i = 0; i < table.rows.size(); ++i) {
                    const std::string path =
                        search_dir + "/witness_" + std::to_string(table.rows[i].n) + ".json";
                    write_text_file(path, dump_packing(packing_to_json(table.witnesses[i])));
                    witness_files[i] = path;
                    written.push_back(path);
                }
            }
            for (const TableRow& row : table.rows)
                std::cerr << "n=" << row.n << " best=" << row.best << "\n";
            emitter.emit(table_to_csv(table, witness_files), written);
            return kExitOk;
        }

        if (search_n >= 1) {
            emitter.output_path = search_out;
            cfg.n = search_n;
            SearchResult res = greedy_grow(cfg);
            if (cfg.strategy == SearchConfig::Strategy::greedy_swap)
                res = local_swap_improve(res.packing, cfg);
            std::cerr << "n=" << search_n << " contacts=" << res.contact_number;
            if (search_n >= 2) std::cerr << " bound_lattice=" << format12(res.bound_lattice);
            if (res.cluster_value >= 0) std::cerr << " cluster_value=" << res.cluster_value;
            std::cerr << "\n";
            emitter.emit(dump_packing(packing_to_json(res.packing)));
            return kExitOk;
        }

        throw std::domain_error("search: pass --n N or --table N_MAX");
    }

    if (exp->parsed()) {
        emitter.output_path = exp_out;
        emitter.inputs = {exp_in};
        emitter.config["format"] = exp_format;
        const Packing p = load_packing(exp_in);
        if (exp_format == "json")
            emitter.emit(dump_packing(packing_to_json(p)));
        else if (exp_format == "xyz")
            emitter.emit(packing_to_xyz(p));
        else if (exp_format == "csv")
            emitter.emit(edges_to_csv(contact_graph(p, tolerance)));
        else
            throw std::domain_error("export: format must be json, xyz or csv");
        return kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
}
