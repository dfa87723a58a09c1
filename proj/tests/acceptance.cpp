// Acceptance suite: one PASS/FAIL line per criterion.

#include "ndcert/dense_operator.hpp"
#include "ndcert/exact.hpp"
#include "ndcert/family.hpp"
#include "ndcert/incline_search.hpp"
#include "ndcert/io.hpp"
#include "ndcert/tensor_projection.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

using namespace ndcert;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::string failures;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            failures += " [failed: " + what + "]";
        }
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::string> axis_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

std::map<std::string, ComplexVector> random_directions(const TensorIndexSpace& space, std::mt19937_64& rng) {
    std::map<std::string, ComplexVector> dirs;
    for (const auto& a : space.axes()) dirs.emplace(a, random_unit_vector(space.alphabet_size(), rng()));
    return dirs;
}

TensorIndexSpace random_space(std::mt19937_64& rng) {
    const std::size_t rank = 1 + rng() % 3;
    const std::size_t d = 1 + rng() % 4;
    return TensorIndexSpace(axis_names(rank), d);
}

// 1: <Px, x> = ||Px||^2 over rank-one, axis, product and branch projections.
Outcome criterion1() {
    Outcome o;
    const auto start = Clock::now();
    std::mt19937_64 rng(1);
    const StageParameters stage(Regime::Toy, {3, 2});
    double worst = 0.0;
    std::size_t pairs = 0;
    for (std::size_t trial = 0; trial < 1000; ++trial, ++pairs) {
        std::function<ComplexVector(const ComplexVector&)> apply;
        std::size_t dim = 0;
        switch (trial % 4) {
            case 0: {
                dim = 1 + rng() % 16;
                const auto v = Complex(0.1 + (rng() % 100) / 10.0) * random_unit_vector(dim, rng());
                apply = [v](const ComplexVector& x) { return rank_one_apply(v, x); };
                break;
            }
            case 1: {
                const auto space = random_space(rng);
                dim = space.dim();
                const auto& axis = space.axes()[rng() % space.rank()];
                const AxisProjectionSpec spec(space, axis, random_unit_vector(space.alphabet_size(), rng()));
                apply = [spec](const ComplexVector& x) { return apply_axis(spec, x); };
                break;
            }
            case 2: {
                const auto space = random_space(rng);
                dim = space.dim();
                auto dirs = random_directions(space, rng);
                if (space.rank() > 1 && rng() % 2) dirs.erase(dirs.begin());
                const ProductProjectionSpec spec(space, dirs);
                apply = [spec](const ComplexVector& x) { return apply_product(spec, x); };
                break;
            }
            default: {
                dim = stage.dim();
                const std::string branch{static_cast<char>('0' + rng() % 2), static_cast<char>('0' + rng() % 2)};
                const BranchProjectionSpec spec(stage, branch, {random_unit_vector(3, rng()), random_unit_vector(2, rng())});
                apply = [spec](const ComplexVector& x) { return apply_branch_projection(spec, x); };
                break;
            }
        }
        const auto x = Complex(0.5 + (rng() % 50) / 10.0) * random_unit_vector(dim, rng());
        const auto px = apply(x);
        const double gap = std::abs(inner(px, x) - Complex(norm_squared(px))) / norm_squared(x);
        worst = std::max(worst, gap);
    }
    const double elapsed = seconds_since(start);
    o.require(worst <= 1e-10, "identity");
    o.require(elapsed < 5.0, "runtime");
    o.detail << pairs << " pairs, worst relative gap " << worst << ", " << elapsed << " s";
    return o;
}

// 2: apply_axis against the dense Kronecker materialization.
Outcome criterion2() {
    Outcome o;
    const auto start = Clock::now();
    std::mt19937_64 rng(2);
    double worst = 0.0;
    std::size_t checks = 0, spaces = 0;
    for (std::size_t rank = 1; rank <= 3; ++rank)
        for (std::size_t d = 1; d <= 4; ++d) {
            const TensorIndexSpace space(axis_names(rank), d);
            if (space.dim() > 256) continue;
            ++spaces;
            for (int t = 0; t < 100; ++t) {
                const auto& axis = space.axes()[rng() % rank];
                const AxisProjectionSpec spec(space, axis, random_unit_vector(d, rng()));
                const auto x = random_unit_vector(space.dim(), rng());
                worst = std::max(worst, distance(dense_materialize(spec).apply(x), apply_axis(spec, x)));
                ++checks;
            }
        }
    const double elapsed = seconds_since(start);
    o.require(worst <= 1e-10, "agreement");
    o.require(elapsed < 10.0, "runtime");
    o.detail << spaces << " spaces, " << checks << " checks, worst " << worst << ", " << elapsed << " s";
    return o;
}

// 3: joint fixed vectors of full-direction products.
Outcome criterion3() {
    Outcome o;
    std::mt19937_64 rng(3);
    double worst_norm = 0.0, worst_residual = 0.0, worst_order = 0.0;
    for (int t = 0; t < 100; ++t) {
        const auto space = random_space(rng);
        const ProductProjectionSpec spec(space, random_directions(space, rng));
        const auto v = joint_fixed_vector(spec);
        worst_norm = std::max(worst_norm, std::abs(norm(v) - 1.0));
        for (const auto& f : spec.factors()) worst_residual = std::max(worst_residual, distance(apply_axis(f, v), v));
        worst_residual = std::max(worst_residual, distance(apply_product(spec, v), v));

        const auto x = random_unit_vector(space.dim(), rng());
        const auto reference = apply_product(spec, x);
        auto order = space.axes();
        std::sort(order.begin(), order.end());
        do {
            worst_order = std::max(worst_order, distance(apply_product_in_order(spec, x, order), reference));
        } while (std::next_permutation(order.begin(), order.end()));
    }
    o.require(worst_norm <= 1e-12, "unit norm");
    o.require(worst_residual <= 1e-10, "residual");
    o.require(worst_order <= 1e-12, "order");
    o.detail << "norm error " << worst_norm << ", residual " << worst_residual << ", order spread " << worst_order;
    return o;
}

// 4: product-distance numerics.
Outcome criterion4() {
    Outcome o;
    const double expected = 0.8414664;
    const double at = inclination_bound(0.9);
    o.require(std::abs(at - expected) <= 1e-6, "value");
    o.require(at <= 0.9, "at most 9/10");

    std::mt19937_64 rng(4);
    const Complex I{0.0, 1.0};
    std::size_t filtered = 0, violations = 0, drawn = 0;
    while (filtered < 100000) {
        const std::size_t d = 1 + drawn % 4;
        ++drawn;
        const auto x = random_unit_vector(d, rng());
        const auto y = random_unit_vector(d, rng());
        double eps = 2.0;
        for (Complex alpha : {Complex(1.0), Complex(-1.0), I, -I}) eps = std::min(eps, distance(x, alpha * y));
        if (!(eps <= std::numbers::sqrt2)) continue;
        ++filtered;
        if (std::abs(inner(x, y)) > inclination_bound(eps) + 1e-12) ++violations;
    }
    o.require(violations == 0, "polarization");
    o.detail << std::setprecision(10) << "inclination_bound(0.9) = " << at << " vs " << expected << " (diff "
             << std::abs(at - expected) << "); " << filtered << " filtered trials, " << violations << " violations";
    return o;
}

// 5: net arithmetic.
Outcome criterion5() {
    Outcome o;
    const auto cap = capacity(128);
    o.require(std::abs(cap.shell_fraction - 0.276251668) <= 1e-9, "(99/100)^128");
    o.require(cap.inclined_capacity >= 2e4, "capacity (float)");
    o.require(below_inclined_capacity(BigInt(20000), 128), "capacity (exact)");

    std::mt19937_64 rng(5);
    double slowest = 0.0;
    bool always_found = true, never_at_two = true;
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 1 + t % 8;
        std::vector<RealVector> point{realify(random_unit_vector(n, rng()))};
        const auto start = Clock::now();
        const auto w = cover_witness(std::span<const RealVector>(point), 0.9, 100000, rng());
        slowest = std::max(slowest, seconds_since(start));
        always_found = always_found && w && real_distance(*w, point[0]) > 0.9;
        for (double radius : {2.0, 2.5})
            never_at_two = never_at_two && !cover_witness(std::span<const RealVector>(point), radius, 2000, rng());
    }
    o.require(always_found, "witness at 0.9");
    o.require(slowest < 1.0, "witness runtime");
    o.require(never_at_two, "no witness at radius >= 2");
    o.detail << std::setprecision(12) << "(99/100)^128 = " << cap.shell_fraction << ", inclined_capacity(128) = "
             << cap.inclined_capacity << ", slowest witness " << slowest << " s";
    return o;
}

// 6: inclined vector at d = 128 against 1000 random unit vectors.
Outcome criterion6() {
    Outcome o;
    std::vector<ComplexVector> family;
    for (std::size_t j = 0; j < 1000; ++j) family.push_back(random_unit_vector(128, derive_seed(6, seed_tags::vectors, j)));
    o.require(below_inclined_capacity(BigInt(family.size()), 128), "n within capacity");

    InclineSearchOptions opts;
    opts.budget = 10000;
    opts.seed = 6;
    const auto start = Clock::now();
    InclinationCertificate cert;
    try {
        cert = find_inclined_vector(family, 0.9, opts);
    } catch (const BudgetExhausted& e) {
        o.require(false, std::string("budget: ") + e.what());
        return o;
    }
    const double elapsed = seconds_since(start);

    // Full recomputation in long double.
    long double worst = 0.0L;
    for (const auto& x : family) {
        long double re = 0.0L, im = 0.0L, nx = 0.0L;
        for (std::size_t i = 0; i < 128; ++i) {
            const long double ar = cert.candidate[i].real(), ai = cert.candidate[i].imag();
            const long double br = x[i].real(), bi = x[i].imag();
            re += ar * br + ai * bi;
            im += ai * br - ar * bi;
            nx += br * br + bi * bi;
        }
        worst = std::max(worst, std::sqrt(re * re + im * im) / std::sqrt(nx));
    }
    o.require(cert.certified, "certified");
    o.require(cert.achieved <= 0.9, "achieved");
    o.require(cert.iterations_used <= 10000, "budget");
    o.require(elapsed < 30.0, "runtime");
    o.require(std::abs(static_cast<double>(worst) - cert.achieved) <= 1e-10 && worst <= 0.9L, "re-verification");
    o.require(verify_inclination(cert, family).ok(), "verify_inclination");
    o.detail << "achieved " << cert.achieved << " (recomputed " << static_cast<double>(worst) << "), "
             << cert.iterations_used << " evaluations, " << elapsed << " s";
    return o;
}

// 7: leakage sets against random subspaces of C^64.
Outcome criterion7() {
    Outcome o;
    std::mt19937_64 rng(7);
    std::size_t violations = 0, checked = 0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t r = 1 + rng() % 8;
        const auto frame = random_orthonormal_basis(64, rng());
        const SubspaceProjector proj(std::vector<ComplexVector>(frame.begin(), frame.begin() + static_cast<long>(r)));
        std::vector<ComplexVector> basis;
        if (t % 2) {
            basis = random_orthonormal_basis(64, rng());
        } else {
            for (std::size_t k = 0; k < 64; ++k) basis.push_back(ComplexVector::basis(64, k));
        }
        for (double eps : {0.5, 0.1, 0.02}) {
            const auto xs = leakage_set(basis, proj, eps);
            if (static_cast<double>(xs.size()) > r * r / eps) ++violations;
            for (std::size_t k = 0; k < basis.size(); ++k) {
                if (std::binary_search(xs.begin(), xs.end(), k)) continue;
                ++checked;
                if (!(norm_squared(proj.apply(basis[k])) < eps)) ++violations;
            }
        }
    }
    o.require(violations == 0, "violations");
    o.detail << checked << " off-leakage indices checked, " << violations << " violations";
    return o;
}

struct ToyStage {
    StageParameters stage{Regime::Toy, {4, 4, 2}};
    std::vector<ComplexVector> basis;
    BranchBuildOptions options;

    ToyStage() {
        basis = random_orthonormal_basis(stage.dim(), derive_seed(8, seed_tags::basis, 0));
        options.rho = 0.9;
        options.seed = 8;
    }
};

// 8: one branch on the toy stage.
Outcome criterion8(const ToyStage& toy) {
    Outcome o;
    const auto start = Clock::now();
    std::optional<BranchBuild> built;
    try {
        built.emplace(build_branch_projection(toy.stage, toy.basis, "010", toy.options));
    } catch (const BudgetExhausted& e) {
        o.require(false, std::string("build: ") + e.what());
        return o;
    }
    const auto cert = verify_suppression(built->spec, toy.basis, 19.0 / 20.0);
    const double elapsed = seconds_since(start);

    const auto report = level_leakage_sets(toy.stage, toy.basis);
    const auto per_index = per_index_suppression_bounds(report, toy.options.rho);
    std::size_t violations = 0;
    double worst_slack = -1.0;
    for (std::size_t k = 0; k < toy.basis.size(); ++k) {
        const double diag = inner(apply_branch_projection(built->spec, toy.basis[k]), toy.basis[k]).real();
        worst_slack = std::max(worst_slack, diag - per_index[k]);
        if (diag > per_index[k] + 1e-10) ++violations;
    }
    o.require(toy.stage.dim() == 528, "stage dimension");
    o.require(cert.passed && cert.max_diagonal <= 0.95, "max diagonal");
    o.require(violations == 0, "per-index bound");
    o.require(elapsed < 60.0, "runtime");
    o.detail << "dim " << toy.stage.dim() << ", max diagonal " << cert.max_diagonal << ", per-index slack "
             << worst_slack << ", " << elapsed << " s";
    return o;
}

// 9: all eight branches, intersections and commutators.
Outcome criterion9(const ToyStage& toy) {
    Outcome o;
    const auto start = Clock::now();
    std::vector<BranchProjectionSpec> specs;
    for (const char* b : {"000", "001", "010", "011", "100", "101", "110", "111"}) {
        try {
            specs.push_back(build_branch_projection(toy.stage, toy.basis, b, toy.options).spec);
        } catch (const BudgetExhausted& e) {
            o.require(false, std::string("build ") + b + ": " + e.what());
            return o;
        }
    }
    double worst_residual = 0.0, worst_norm = 0.0, worst_commutator = 0.0;
    std::size_t pairs = 0, triples = 0;
    auto check = [&](std::vector<BranchProjectionSpec> group) {
        const auto res = branch_intersection(group);
        worst_norm = std::max(worst_norm, std::abs(norm(res.vector) - 1.0));
        for (const auto& s : group)
            worst_residual = std::max(worst_residual, distance(apply_branch_projection(s, res.vector), res.vector));
    };
    std::mt19937_64 rng(9);
    for (std::size_t i = 0; i < specs.size(); ++i)
        for (std::size_t j = i + 1; j < specs.size(); ++j) {
            check({specs[i], specs[j]});
            ++pairs;
            for (std::size_t k = j + 1; k < specs.size(); ++k) {
                check({specs[i], specs[j], specs[k]});
                ++triples;
            }
            const std::vector<std::string> branches{specs[i].branch(), specs[j].branch()};
            const unsigned level = *separating_level(branches, toy.stage.depth());
            for (int t = 0; t < 3; ++t) {
                ComplexVector x = random_unit_vector(toy.stage.dim(), rng());
                for (std::size_t n = 0; n < toy.stage.level_offset(level); ++n) x[n] = 0.0;
                const auto ab = apply_branch_projection(specs[i], apply_branch_projection(specs[j], x));
                const auto ba = apply_branch_projection(specs[j], apply_branch_projection(specs[i], x));
                worst_commutator = std::max(worst_commutator, distance(ab, ba));
            }
        }
    o.require(pairs == 28 && triples == 56, "group counts");
    o.require(worst_norm <= 1e-12, "unit vector");
    o.require(worst_residual <= 1e-10, "residual");
    o.require(worst_commutator <= 1e-12, "commutator");
    o.detail << pairs << " pairs, " << triples << " triples, max residual " << worst_residual << ", max commutator "
             << worst_commutator << ", " << seconds_since(start) << " s";
    return o;
}

// 10: smallest admissible alphabet size for m = 1.
Outcome criterion10() {
    Outcome o;
    const auto start = Clock::now();
    const std::uint64_t d = min_level_dimension(1);
    const double elapsed = seconds_since(start);

    // Oracle: 32 d^5 * 91^d < 100^d, scanned upward from 128.
    using boost::multiprecision::cpp_int;
    auto oracle = [](std::uint64_t n) {
        cpp_int lhs = 32;
        for (int i = 0; i < 5; ++i) lhs *= n;
        return lhs * boost::multiprecision::pow(cpp_int(91), static_cast<unsigned>(n)) <
               boost::multiprecision::pow(cpp_int(100), static_cast<unsigned>(n));
    };
    std::uint64_t scan = 128;
    while (!oracle(scan)) ++scan;

    o.require(elapsed < 10.0, "runtime");
    o.require(d == scan, "oracle");
    o.require(!level_predicate(1, 128) && !oracle(128), "fails at 128");
    o.require(level_predicate(1, 1000) && oracle(1000), "holds at 1000");
    o.detail << "min_level_dimension(1) = " << d << ", oracle " << scan << ", " << elapsed << " s";
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 11: demo reruns are byte-identical.
Outcome criterion11() {
    Outcome o;
    const fs::path root = fs::temp_directory_path() / "ndcert_acceptance";
    const fs::path out = root / "demo";
    const fs::path first = root / "first";
    fs::remove_all(root);
    fs::create_directories(root);
    const std::string cmd = std::string(NDCERT_CLI_PATH) + " demo --seed 11 --out " + out.string() + " > " +
                            (root / "log.txt").string() + " 2>&1";
    const auto start = Clock::now();
    const int rc1 = std::system(cmd.c_str());
    fs::copy(out, first, fs::copy_options::recursive);
    const int rc2 = std::system(cmd.c_str());
    std::size_t files = 0, differing = 0;
    for (const auto& entry : fs::directory_iterator(first)) {
        ++files;
        const auto again = out / entry.path().filename();
        if (!fs::exists(again) || slurp(entry.path()) != slurp(again)) ++differing;
    }
    std::size_t second_files = 0;
    for ([[maybe_unused]] const auto& entry : fs::directory_iterator(out)) ++second_files;
    o.require(rc1 == 0 && rc2 == 0, "demo exit status");
    o.require(files == 12 && second_files == files, "file set");
    o.require(differing == 0, "byte identity");
    o.detail << files << " files, " << differing << " differing, " << seconds_since(start) << " s for two runs";
    return o;
}

}  // namespace

int main() {
    std::cout << std::setprecision(6);
    std::vector<std::pair<int, std::function<Outcome()>>> criteria;
    criteria.emplace_back(1, criterion1);
    criteria.emplace_back(2, criterion2);
    criteria.emplace_back(3, criterion3);
    criteria.emplace_back(4, criterion4);
    criteria.emplace_back(5, criterion5);
    criteria.emplace_back(6, criterion6);
    criteria.emplace_back(7, criterion7);
    const ToyStage toy;
    criteria.emplace_back(8, [&] { return criterion8(toy); });
    criteria.emplace_back(9, [&] { return criterion9(toy); });
    criteria.emplace_back(10, criterion10);
    criteria.emplace_back(11, criterion11);

    int failed = 0;
    for (auto& [id, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        if (!o.pass) ++failed;
        std::cout << "criterion " << std::setw(2) << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail.str()
                  << o.failures << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
