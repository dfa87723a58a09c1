#include "ndcert/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ndcert {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw InputError(std::string("expected a JSON object with field '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
    return *it;
}

std::size_t positive_size(const Json& j, const char* what) {
    if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0)
        throw InputError(std::string(what) + " must be a positive integer");
    return j.get<std::size_t>();
}

double finite_number(const Json& j, const char* what) {
    if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw InputError(std::string(what) + " must be finite");
    return x;
}

}  // namespace

std::string canonical_dump(const Json& j) { return j.dump(); }

Json vector_to_json(const ComplexVector& v) {
    Json entries = Json::array();
    for (const auto& z : v) entries.push_back(Json::array({z.real(), z.imag()}));
    return Json{{"dim", v.dim()}, {"entries", std::move(entries)}};
}

ComplexVector vector_from_json(const Json& j) {
    const std::size_t dim = positive_size(field(j, "dim"), "vector dim");
    const Json& entries = field(j, "entries");
    if (!entries.is_array() || entries.size() != dim)
        throw InputError("vector entries must be an array of exactly dim pairs");
    ComplexVector v(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const Json& pair = entries[k];
        if (!pair.is_array() || pair.size() != 2) throw InputError("vector entry must be a [re, im] pair");
        v[k] = Complex(finite_number(pair[0], "real part"), finite_number(pair[1], "imaginary part"));
    }
    return v;
}

Json vectors_to_json(std::span<const ComplexVector> vectors) {
    Json out = Json::array();
    for (const auto& v : vectors) out.push_back(vector_to_json(v));
    return out;
}

std::vector<ComplexVector> vectors_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("vector file must be a JSON array of vectors");
    std::vector<ComplexVector> out;
    out.reserve(j.size());
    for (const auto& item : j) out.push_back(vector_from_json(item));
    return out;
}

Json space_to_json(const TensorIndexSpace& space) {
    return Json{{"axes", space.axes()}, {"alphabet_size", space.alphabet_size()}};
}

TensorIndexSpace space_from_json(const Json& j) {
    const Json& axes = field(j, "axes");
    if (!axes.is_array()) throw InputError("axes must be an array of strings");
    std::vector<std::string> labels;
    for (const auto& a : axes) {
        if (!a.is_string()) throw InputError("axis labels must be strings");
        labels.push_back(a.get<std::string>());
    }
    try {
        return TensorIndexSpace(std::move(labels), positive_size(field(j, "alphabet_size"), "alphabet_size"));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

Json product_spec_to_json(const ProductProjectionSpec& spec) {
    Json j = space_to_json(spec.space());
    Json dirs = Json::object();
    for (const auto& [axis, v] : spec.directions()) dirs[axis] = vector_to_json(v);
    j["directions"] = std::move(dirs);
    return j;
}

ProductProjectionSpec product_spec_from_json(const Json& j) {
    TensorIndexSpace space = space_from_json(j);
    const Json& dirs = field(j, "directions");
    if (!dirs.is_object()) throw InputError("directions must be an object keyed by axis");
    std::map<std::string, ComplexVector> directions;
    for (auto it = dirs.begin(); it != dirs.end(); ++it) directions.emplace(it.key(), vector_from_json(it.value()));
    try {
        return ProductProjectionSpec(std::move(space), directions);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

Json stage_to_json(const StageParameters& stage) {
    Json levels = Json::array();
    for (unsigned m = 1; m <= stage.depth(); ++m) levels.push_back(Json{{"m", m}, {"d", stage.alphabet(m)}});
    return Json{{"regime", to_string(stage.regime())}, {"levels", std::move(levels)}};
}

StageParameters stage_from_json(const Json& j) {
    const Json& regime = field(j, "regime");
    if (!regime.is_string()) throw InputError("regime must be a string");
    const Json& levels = field(j, "levels");
    if (!levels.is_array() || levels.empty()) throw InputError("levels must be a nonempty array");
    std::vector<std::size_t> ds;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const std::size_t m = positive_size(field(levels[i], "m"), "level m");
        if (m != i + 1) throw InputError("levels must list m = 1, 2, ... in order");
        ds.push_back(positive_size(field(levels[i], "d"), "level d"));
    }
    try {
        return StageParameters(regime_from_string(regime.get<std::string>()), std::move(ds));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

Json inclination_to_json(const InclinationCertificate& cert) {
    return Json{{"d", cert.d},
                {"family_digest", cert.family_digest},
                {"candidate", vector_to_json(cert.candidate)},
                {"achieved", cert.achieved},
                {"bound", cert.bound},
                {"seed", cert.seed},
                {"iterations_used", cert.iterations_used},
                {"status", cert.certified ? "certified" : "failed"}};
}

InclinationCertificate inclination_from_json(const Json& j) {
    InclinationCertificate cert;
    cert.d = positive_size(field(j, "d"), "d");
    const Json& digest = field(j, "family_digest");
    if (!digest.is_string()) throw InputError("family_digest must be a string");
    cert.family_digest = digest.get<std::string>();
    cert.candidate = vector_from_json(field(j, "candidate"));
    if (cert.candidate.dim() != cert.d) throw InputError("candidate dimension differs from d");
    cert.achieved = finite_number(field(j, "achieved"), "achieved");
    cert.bound = finite_number(field(j, "bound"), "bound");
    const Json& seed = field(j, "seed");
    if (!seed.is_number_unsigned()) throw InputError("seed must be a nonnegative integer");
    cert.seed = seed.get<std::uint64_t>();
    const Json& iters = field(j, "iterations_used");
    if (!iters.is_number_unsigned()) throw InputError("iterations_used must be a nonnegative integer");
    cert.iterations_used = iters.get<std::size_t>();
    cert.certified = field(j, "status") == "certified";
    return cert;
}

Json suppression_to_json(const SuppressionCertificate& cert) {
    return Json{{"basis_digest", cert.basis_digest},
                {"branch", cert.branch},
                {"regime", to_string(cert.regime)},
                {"diagonals", cert.diagonals},
                {"max_diagonal", cert.max_diagonal},
                {"bound", cert.bound},
                {"passed", cert.passed}};
}

SuppressionCertificate suppression_from_json(const Json& j) {
    SuppressionCertificate cert;
    try {
        cert.basis_digest = field(j, "basis_digest").get<std::string>();
        cert.branch = field(j, "branch").get<std::string>();
        cert.regime = regime_from_string(field(j, "regime").get<std::string>());
        cert.diagonals = field(j, "diagonals").get<std::vector<double>>();
        cert.max_diagonal = finite_number(field(j, "max_diagonal"), "max_diagonal");
        cert.bound = finite_number(field(j, "bound"), "bound");
        cert.passed = field(j, "passed").get<bool>();
    } catch (const Json::exception& e) {
        throw InputError(std::string("suppression certificate: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    return cert;
}

Json branch_spec_to_json(const BranchProjectionSpec& spec) {
    Json levels = Json::array();
    for (unsigned m = 1; m <= spec.stage().depth(); ++m)
        levels.push_back(Json{{"m", m}, {"axis", spec.axis(m)}, {"direction", vector_to_json(spec.direction(m))}});
    return Json{{"stage", stage_to_json(spec.stage())}, {"branch", spec.branch()}, {"levels", std::move(levels)}};
}

BranchProjectionSpec branch_spec_from_json(const Json& j) {
    StageParameters stage = stage_from_json(field(j, "stage"));
    const Json& branch = field(j, "branch");
    if (!branch.is_string()) throw InputError("branch must be a string");
    const Json& levels = field(j, "levels");
    if (!levels.is_array() || levels.size() != stage.depth()) throw InputError("need one level entry per stage level");
    const std::string b = branch.get<std::string>();
    std::vector<ComplexVector> directions;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const Json& axis = field(levels[i], "axis");
        if (!axis.is_string() || axis.get<std::string>() != b.substr(0, i + 1))
            throw InputError("level " + std::to_string(i + 1) + " axis is not the branch prefix");
        directions.push_back(vector_from_json(field(levels[i], "direction")));
    }
    try {
        return BranchProjectionSpec(std::move(stage), b, std::move(directions));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return Json::parse(buffer.str());
    } catch (const Json::parse_error& e) {
        throw InputError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << canonical_dump(j) << '\n';
}

}  // namespace ndcert
