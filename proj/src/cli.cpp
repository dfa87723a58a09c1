#include "ndcert/cli.hpp"

#include "ndcert/exact.hpp"
#include "ndcert/family.hpp"
#include "ndcert/incline_search.hpp"
#include "ndcert/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>

namespace ndcert::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kResidualTolerance = 1e-10;
constexpr double kDiagonalTolerance = 1e-10;

/// Embedded in every output file. Wall-clock time is reported on stderr only,
/// so reruns with the same arguments are byte-identical.
Json manifest(const std::string& command, const std::vector<std::string>& args, std::uint64_t seed,
              Json input_digests) {
    return Json{{"command", command},
                {"argv", args},
                {"seed", seed},
                {"version", NDCERT_VERSION},
                {"input_digests", std::move(input_digests)}};
}

std::vector<ComplexVector> random_vectors(std::size_t count, std::size_t dim, std::uint64_t seed) {
    std::vector<ComplexVector> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_unit_vector(dim, derive_seed(seed, seed_tags::vectors, i)));
    return out;
}

std::vector<ComplexVector> random_stage_basis(const StageParameters& stage, std::uint64_t seed) {
    return random_orthonormal_basis(stage.dim(), derive_seed(seed, seed_tags::basis, 0));
}

Json params_json(unsigned m) {
    const LevelDimensionScan scan = scan_level_dimension(m);
    auto eval_json = [](const PredicateEvaluation& ev) {
        return Json{{"d", ev.d}, {"lhs", ev.lhs.str()}, {"rhs_floor", ev.rhs_floor.str()}, {"holds", ev.holds}};
    };
    Json trace{{"first_success", eval_json(scan.first_success)}};
    trace["last_failure"] = scan.last_failure ? eval_json(*scan.last_failure) : Json(nullptr);
    return Json{{"m", m},
                {"d_min", scan.d_min},
                {"predicate", "32 m^2 d^(3*2^m-1) <= floor((100/91)^d)"},
                {"trace", std::move(trace)}};
}

Json level_report_json(const LevelBuildReport& r) {
    return Json{{"m", r.m},
                {"axis", r.axis},
                {"leakage_count", r.leakage_count},
                {"route", r.route},
                {"block_count", r.block_count},
                {"capacity_hypothesis", r.capacity_hypothesis},
                {"block_achieved", r.block_achieved},
                {"level_ratio", r.level_ratio},
                {"iterations", r.iterations}};
}

struct BuildRequest {
    std::string stage_path;
    std::string branch;
    std::string basis = "random";
    std::uint64_t seed = 0;
    double rho = 0.9;
    std::size_t budget = 10000;
    unsigned threads = 1;
};

/// Builds one branch; returns the family file contents.
Json build_family(const StageParameters& stage, std::span<const ComplexVector> basis, const Json& basis_record,
                  const std::string& branch, const BranchBuildOptions& options, Json manifest_json) {
    const BranchBuild built = build_branch_projection(stage, basis, branch, options);
    Json levels = Json::array();
    for (const auto& r : built.levels) levels.push_back(level_report_json(r));
    return Json{{"manifest", std::move(manifest_json)},
                {"spec", branch_spec_to_json(built.spec)},
                {"certificate", suppression_to_json(built.certificate)},
                {"levels", std::move(levels)},
                {"basis", basis_record},
                {"rho", options.rho}};
}

struct VerifyReport {
    Json json;
    int code = kExitOk;
};

VerifyReport verify_family(const Json& family, std::span<const ComplexVector> basis, double bound) {
    const BranchProjectionSpec spec = branch_spec_from_json(family.at("spec"));
    const SuppressionCertificate stored = suppression_from_json(family.at("certificate"));
    if (!basis.empty() && basis.front().dim() != spec.stage().dim())
        throw InputError("basis dimension " + std::to_string(basis.front().dim()) + " differs from stage dimension " +
                         std::to_string(spec.stage().dim()));
    const SuppressionCertificate fresh = verify_suppression(spec, basis, bound);
    if (fresh.basis_digest != stored.basis_digest) throw InputError("basis digest differs from the certificate's");

    double worst_mismatch = 0.0;
    bool shape_ok = fresh.diagonals.size() == stored.diagonals.size();
    if (shape_ok)
        for (std::size_t k = 0; k < fresh.diagonals.size(); ++k)
            worst_mismatch = std::max(worst_mismatch, std::abs(fresh.diagonals[k] - stored.diagonals[k]));
    const bool matches = shape_ok && worst_mismatch <= kDiagonalTolerance &&
                         std::abs(fresh.max_diagonal - stored.max_diagonal) <= kDiagonalTolerance;
    double max_entry = 0.0;
    for (double v : fresh.diagonals) max_entry = std::max(max_entry, v);
    const bool in_range = std::all_of(fresh.diagonals.begin(), fresh.diagonals.end(),
                                      [](double v) { return v >= -kDiagonalTolerance && v <= 1.0 + kDiagonalTolerance; });

    VerifyReport report;
    report.json = Json{{"branch", spec.branch()},
                       {"bound", bound},
                       {"max_diagonal", fresh.max_diagonal},
                       {"certificate_matches", matches},
                       {"worst_diagonal_mismatch", shape_ok ? Json(worst_mismatch) : Json(nullptr)},
                       {"diagonals_in_range", in_range},
                       {"passed", fresh.passed && matches && in_range}};
    report.code = (fresh.passed && matches && in_range) ? kExitOk : kExitNegative;
    return report;
}

Json intersection_json(std::span<const BranchProjectionSpec> specs) {
    const IntersectionResult res = branch_intersection(specs);
    std::vector<std::string> branches;
    for (const auto& s : specs) branches.push_back(s.branch());
    const double worst = res.residuals.empty() ? 0.0 : *std::max_element(res.residuals.begin(), res.residuals.end());
    return Json{{"branches", branches},
                {"level", res.level},
                {"axes", res.axes},
                {"vector", vector_to_json(res.vector)},
                {"norm", norm(res.vector)},
                {"residuals", res.residuals},
                {"max_residual", worst},
                {"passed", worst <= kResidualTolerance && std::abs(norm(res.vector) - 1.0) <= 1e-12}};
}

std::vector<ComplexVector> load_basis(const std::string& source, const StageParameters& stage, std::uint64_t seed,
                                      Json& record) {
    if (source == "random") {
        record = Json{{"source", "random"}, {"seed", seed}};
        return random_stage_basis(stage, seed);
    }
    auto basis = vectors_from_json(read_json_file(source));
    if (basis.empty()) throw InputError("basis file is empty");
    for (const auto& b : basis)
        if (b.dim() != stage.dim())
            throw InputError("basis vector dimension " + std::to_string(b.dim()) + " differs from stage dimension " +
                             std::to_string(stage.dim()));
    try {
        require_orthonormal(basis);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    record = Json{{"source", "file"}, {"digest", vector_list_digest(basis)}};
    return basis;
}

std::vector<std::string> all_branches(unsigned depth) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < (std::size_t{1} << depth); ++k) {
        std::string b(depth, '0');
        for (unsigned bit = 0; bit < depth; ++bit)
            if ((k >> (depth - 1 - bit)) & 1U) b[bit] = '1';
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    CLI::App app{"Certified inclined vectors and finite-stage branch projections"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(NDCERT_VERSION));

    // params
    unsigned params_m = 0;
    auto* params = app.add_subcommand("params", "Smallest admissible alphabet size d(m) with an exact trace");
    params->add_option("--m", params_m, "Level m >= 1")->required();

    // random-vectors
    std::size_t rv_count = 0, rv_dim = 0;
    std::uint64_t rv_seed = 0;
    std::string rv_out;
    auto* rvec = app.add_subcommand("random-vectors", "Write seeded random unit vectors as a vector file");
    rvec->add_option("--count", rv_count)->required()->check(CLI::PositiveNumber);
    rvec->add_option("--dim", rv_dim)->required()->check(CLI::PositiveNumber);
    rvec->add_option("--seed", rv_seed);
    rvec->add_option("--out", rv_out)->required();

    // incline
    std::string in_input, in_out;
    double in_bound = 0.9;
    std::size_t in_budget = 10000;
    std::uint64_t in_seed = 0;
    unsigned threads = 1;
    auto* incline = app.add_subcommand("incline", "Search and certify an inclined unit vector");
    incline->add_option("--input", in_input, "Vector file")->required();
    incline->add_option("--bound", in_bound, "Target c in (0,1)");
    incline->add_option("--budget", in_budget, "Objective evaluations");
    incline->add_option("--seed", in_seed);
    incline->add_option("--out", in_out, "Certificate file")->required();
    incline->add_option("--threads", threads, "Worker threads (speed only)");

    // family
    auto* family = app.add_subcommand("family", "Branch projection families");
    family->require_subcommand(1);
    BuildRequest req;
    std::string build_out;
    auto* fbuild = family->add_subcommand("build", "Build a branch projection with a suppression certificate");
    fbuild->add_option("--stage", req.stage_path, "Stage file")->required();
    fbuild->add_option("--branch", req.branch, "Binary branch string, length >= depth")->required();
    fbuild->add_option("--basis", req.basis, "Basis file, or 'random'");
    fbuild->add_option("--seed", req.seed);
    fbuild->add_option("--rho", req.rho, "Per-level squared ratio target in (0,1)");
    fbuild->add_option("--budget", req.budget);
    fbuild->add_option("--threads", threads);
    fbuild->add_option("--out", build_out)->required();

    std::string verify_family_path, verify_basis;
    std::optional<std::uint64_t> verify_seed;
    double verify_bound = 19.0 / 20.0;
    auto* fverify = family->add_subcommand("verify", "Recompute every diagonal of a family file");
    fverify->add_option("--family", verify_family_path)->required();
    fverify->add_option("--basis", verify_basis, "Basis file or 'random' (default: as recorded)");
    fverify->add_option("--seed", verify_seed, "Seed for --basis random (default: as recorded)");
    fverify->add_option("--bound", verify_bound);

    std::vector<std::string> intersect_paths;
    std::string intersect_out;
    auto* fintersect = family->add_subcommand("intersect", "Common fixed vector of several branch projections");
    fintersect->add_option("--family", intersect_paths)->required()->expected(2, -1);
    fintersect->add_option("--out", intersect_out)->required();

    // cover
    std::string cover_points, cover_out;
    double cover_radius = 0.9;
    std::size_t cover_trials = 100000;
    std::uint64_t cover_seed = 0;
    auto* cover = app.add_subcommand("cover", "Look for a unit vector farther than --radius from every point");
    cover->add_option("--points", cover_points)->required();
    cover->add_option("--radius", cover_radius);
    cover->add_option("--trials", cover_trials);
    cover->add_option("--seed", cover_seed);
    cover->add_option("--out", cover_out);

    // demo
    std::uint64_t demo_seed = 0;
    std::string demo_out = "demo-out";
    auto* demo = app.add_subcommand("demo", "Inclined vector in C^128, toy stage families and intersections");
    demo->add_option("--seed", demo_seed);
    demo->add_option("--out", demo_out, "Output directory");
    demo->add_option("--threads", threads);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    auto report_time = [&](const std::string& what) {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
        err << what << ": " << ms.count() << " ms\n";
    };

    try {
        if (*params) {
            if (params_m < 1) {
                err << "params: --m must be >= 1\n";
                return kExitInput;
            }
            out << params_json(params_m).dump(2) << '\n';
            return kExitOk;
        }

        if (*rvec) {
            write_json_file(rv_out, vectors_to_json(random_vectors(rv_count, rv_dim, rv_seed)));
            return kExitOk;
        }

        if (*incline) {
            const Json input = read_json_file(in_input);
            const auto vectors = vectors_from_json(input);
            if (vectors.empty()) throw InputError("vector file is empty");
            const std::size_t d = vectors.front().dim();
            for (const auto& v : vectors)
                if (v.dim() != d) throw InputError("vectors in the input have different dimensions");
            if (!(in_bound > 0.0 && in_bound < 1.0)) throw InputError("--bound must lie in (0, 1)");
            InclineSearchOptions opts;
            opts.budget = in_budget;
            opts.seed = in_seed;
            opts.threads = threads;
            const InclinationCertificate cert = search_inclined_vector(vectors, in_bound, opts);
            const Json doc{{"manifest", manifest("incline", args, in_seed, Json{{"input", sha256_hex(canonical_dump(input))}})},
                           {"certificate", inclination_to_json(cert)}};
            write_json_file(in_out, doc);
            out << "achieved " << cert.achieved << (cert.certified ? " <= " : " > ") << in_bound << '\n';
            report_time("incline");
            return cert.certified ? kExitOk : kExitNegative;
        }

        if (*fbuild) {
            const StageParameters stage = stage_from_json(read_json_file(req.stage_path));
            try {
                validate_branch(req.branch, stage.depth());
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            Json basis_record;
            const auto basis = load_basis(req.basis, stage, req.seed, basis_record);
            BranchBuildOptions opts;
            opts.rho = req.rho;
            opts.budget = req.budget;
            opts.seed = req.seed;
            opts.threads = threads;
            if (!(req.rho > 0.0 && req.rho < 1.0)) throw InputError("--rho must lie in (0, 1)");
            Json digests{{"stage", sha256_hex(canonical_dump(stage_to_json(stage)))}, {"basis", vector_list_digest(basis)}};
            const Json doc = build_family(stage, basis, basis_record, req.branch, opts,
                                          manifest("family build", args, req.seed, std::move(digests)));
            write_json_file(build_out, doc);
            out << "branch " << req.branch << ": max diagonal " << doc["certificate"]["max_diagonal"].get<double>()
                << " <= " << doc["certificate"]["bound"].get<double>() << '\n';
            report_time("family build");
            return kExitOk;
        }

        if (*fverify) {
            const Json fam = read_json_file(verify_family_path);
            const BranchProjectionSpec spec = branch_spec_from_json(fam.at("spec"));
            std::string source = verify_basis;
            std::uint64_t seed = 0;
            if (source.empty()) {
                const Json& rec = fam.at("basis");
                if (rec.at("source") != "random") throw InputError("family was built from a basis file; pass --basis");
                source = "random";
                seed = rec.at("seed").get<std::uint64_t>();
            } else if (source == "random") {
                seed = verify_seed ? *verify_seed : fam.at("basis").at("seed").get<std::uint64_t>();
            }
            Json record;
            const auto basis = load_basis(source, spec.stage(), seed, record);
            const VerifyReport report = verify_family(fam, basis, verify_bound);
            out << report.json.dump(2) << '\n';
            return report.code;
        }

        if (*fintersect) {
            std::vector<BranchProjectionSpec> specs;
            Json digests = Json::object();
            for (const auto& p : intersect_paths) {
                const Json fam = read_json_file(p);
                specs.push_back(branch_spec_from_json(fam.at("spec")));
                digests[p] = sha256_hex(canonical_dump(fam));
            }
            for (const auto& s : specs)
                if (!(s.stage() == specs.front().stage())) throw InputError("family files use different stages");
            Json result;
            try {
                result = intersection_json(specs);
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            result["manifest"] = manifest("family intersect", args, 0, std::move(digests));
            write_json_file(intersect_out, result);
            out << "level " << result["level"].get<unsigned>() << ", max residual "
                << result["max_residual"].get<double>() << '\n';
            return result["passed"].get<bool>() ? kExitOk : kExitNegative;
        }

        if (*cover) {
            const Json input = read_json_file(cover_points);
            std::optional<RealVector> witness;
            std::vector<RealVector> real_points;
            // Either a vector file (complex, realified) or {"field": "real", "points": [[...], ...]}.
            if (input.is_object() && input.value("field", "") == "real") {
                try {
                    real_points = input.at("points").get<std::vector<RealVector>>();
                } catch (const Json::exception& e) {
                    throw InputError(std::string("points: ") + e.what());
                }
            } else {
                for (const auto& v : vectors_from_json(input)) real_points.push_back(realify(v));
            }
            if (real_points.empty()) throw InputError("point file is empty");
            for (const auto& p : real_points)
                if (p.size() != real_points.front().size() || p.empty()) throw InputError("points have inconsistent dimensions");
            if (!(cover_radius > 0.0)) throw InputError("--radius must be positive");
            witness = cover_witness(std::span<const RealVector>(real_points), cover_radius, cover_trials, cover_seed);
            if (!cover_out.empty()) {
                Json doc{{"manifest", manifest("cover", args, cover_seed, Json{{"points", sha256_hex(canonical_dump(input))}})},
                         {"radius", cover_radius},
                         {"trials", cover_trials},
                         {"witness", witness ? Json(*witness) : Json(nullptr)}};
                if (witness) {
                    double nearest = std::numeric_limits<double>::infinity();
                    for (const auto& p : real_points) nearest = std::min(nearest, real_distance(p, *witness));
                    doc["nearest_distance"] = nearest;
                }
                write_json_file(cover_out, doc);
            }
            out << (witness ? "witness found" : "no witness found within the trial budget") << '\n';
            return witness ? kExitOk : kExitNegative;
        }

        if (*demo) {
            const fs::path dir(demo_out);
            fs::create_directories(dir);
            bool all_ok = true;

            // Inclined vector at d = 128 against 1000 random unit vectors.
            const auto vectors = random_vectors(1000, 128, demo_seed);
            const Json vec_json = vectors_to_json(vectors);
            write_json_file(dir / "vectors.json", vec_json);
            InclineSearchOptions iopts;
            iopts.budget = 10000;
            iopts.seed = derive_seed(demo_seed, seed_tags::restart, 1);
            iopts.threads = threads;
            const InclinationCertificate icert = search_inclined_vector(vectors, 0.9, iopts);
            all_ok = all_ok && icert.certified;
            write_json_file(dir / "incline.json",
                            Json{{"manifest", manifest("demo", args, demo_seed, Json{{"input", sha256_hex(canonical_dump(vec_json))}})},
                                 {"certificate", inclination_to_json(icert)}});
            out << "incline: achieved " << icert.achieved << '\n';

            // Toy stage M = 3, d = (4, 4, 2), every branch of length 3.
            const StageParameters stage(Regime::Toy, {4, 4, 2});
            write_json_file(dir / "stage.json", stage_to_json(stage));
            const std::uint64_t basis_seed = derive_seed(demo_seed, seed_tags::basis, 1);
            Json basis_record;
            const auto basis = load_basis("random", stage, basis_seed, basis_record);
            BranchBuildOptions bopts;
            bopts.rho = 0.9;
            bopts.seed = demo_seed;
            bopts.threads = threads;
            Json digests{{"stage", sha256_hex(canonical_dump(stage_to_json(stage)))}, {"basis", vector_list_digest(basis)}};
            std::vector<BranchProjectionSpec> specs;
            for (const auto& branch : all_branches(stage.depth())) {
                const Json doc = build_family(stage, basis, basis_record, branch, bopts, manifest("demo", args, demo_seed, digests));
                write_json_file(dir / ("family_" + branch + ".json"), doc);
                specs.push_back(branch_spec_from_json(doc.at("spec")));
                const VerifyReport v = verify_family(doc, basis, 19.0 / 20.0);
                all_ok = all_ok && v.code == kExitOk;
                out << "family " << branch << ": max diagonal " << v.json["max_diagonal"].get<double>() << '\n';
            }

            // Every pair and triple of branches.
            Json inters = Json::array();
            double worst = 0.0;
            const std::size_t n = specs.size();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    std::vector<BranchProjectionSpec> pair{specs[i], specs[j]};
                    inters.push_back(intersection_json(pair));
                    for (std::size_t k = j + 1; k < n; ++k) {
                        std::vector<BranchProjectionSpec> triple{specs[i], specs[j], specs[k]};
                        inters.push_back(intersection_json(triple));
                    }
                }
            for (const auto& r : inters) {
                worst = std::max(worst, r["max_residual"].get<double>());
                all_ok = all_ok && r["passed"].get<bool>();
            }
            write_json_file(dir / "intersections.json",
                            Json{{"manifest", manifest("demo", args, demo_seed, digests)}, {"intersections", std::move(inters)}});
            out << "intersections: max residual " << worst << '\n';
            report_time("demo");
            return all_ok ? kExitOk : kExitNegative;
        }
    } catch (const BudgetExhausted& e) {
        err << "budget exhausted";
        if (e.level()) err << " at level " << *e.level();
        err << ": " << e.what() << '\n';
        return kExitBudget;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Json::exception& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace ndcert::cli
