#include "assocmem/serialize.hpp"

#include <fstream>
#include <sstream>

#include "assocmem/errors.hpp"

namespace assocmem {

namespace {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw InvalidArgument("complex entry must be an [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw InvalidArgument(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

void expect_kind(const Json& j, const char* kind) {
    const auto actual = field(j, "kind").get<std::string>();
    if (actual != kind) {
        throw InvalidArgument("expected kind \"" + std::string(kind) + "\", got \"" + actual + "\"");
    }
}

void expect_model(const Json& j, const char* model) {
    const auto actual = field(j, "model").get<std::string>();
    if (actual != model) {
        throw InvalidArgument("expected model \"" + std::string(model) + "\", got \"" + actual + "\"");
    }
}

} // namespace

Json to_json(const RealPatternSet& set) {
    Json pats = Json::array();
    for (const auto& v : set.patterns()) pats.push_back(std::vector<double>(v.begin(), v.end()));
    return Json{{"n", set.n()}, {"p", set.p()}, {"kind", "real"}, {"grid_weight", 1.0},
                {"patterns", std::move(pats)}};
}

Json to_json(const std::vector<ComplexState>& states) {
    if (states.empty()) throw InvalidArgument("cannot serialize an empty state list");
    Json pats = Json::array();
    for (const auto& s : states) {
        Json row = Json::array();
        for (const auto& z : s.values()) row.push_back(complex_to_json(z));
        pats.push_back(std::move(row));
    }
    return Json{{"n", states.front().n()}, {"p", states.size()}, {"kind", "complex"},
                {"grid_weight", states.front().grid_weight()}, {"patterns", std::move(pats)}};
}

std::string pattern_kind(const Json& j) { return field(j, "kind").get<std::string>(); }

RealPatternSet real_patterns_from_json(const Json& j) {
    expect_kind(j, "real");
    std::vector<RealVector> pats;
    for (const auto& row : field(j, "patterns")) {
        const auto v = row.get<std::vector<double>>();
        pats.push_back(Eigen::Map<const RealVector>(v.data(), static_cast<Eigen::Index>(v.size())));
    }
    if (pats.size() != field(j, "p").get<std::size_t>()) throw InvalidArgument("pattern count differs from \"p\"");
    RealPatternSet set(std::move(pats), Normalization::keep);
    if (set.n() != field(j, "n").get<std::size_t>()) throw InvalidArgument("pattern length differs from \"n\"");
    return set;
}

std::vector<ComplexState> complex_states_from_json(const Json& j) {
    const auto kind = pattern_kind(j);
    const double w = j.value("grid_weight", 1.0);
    std::vector<ComplexState> out;
    if (kind == "real") {
        const auto set = real_patterns_from_json(j);
        for (const auto& v : set.patterns()) out.push_back(ComplexState::from_real(v, w));
        return out;
    }
    expect_kind(j, "complex");
    const auto n = field(j, "n").get<std::size_t>();
    for (const auto& row : field(j, "patterns")) {
        if (row.size() != n) throw InvalidArgument("pattern length differs from \"n\"");
        ComplexVector v(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(row[i]);
        out.emplace_back(std::move(v), w);
    }
    if (out.size() != field(j, "p").get<std::size_t>() || out.empty()) {
        throw InvalidArgument("pattern count differs from \"p\"");
    }
    return out;
}

Json to_json(const HebbMatrix& J, const RealPatternSet& patterns) {
    const auto& W = J.weights();
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(W.size()));
    for (Eigen::Index r = 0; r < W.rows(); ++r)
        for (Eigen::Index c = 0; c < W.cols(); ++c) values.push_back(W(r, c));
    return Json{{"kind", "real_matrix"}, {"model", "hopfield"}, {"n", J.n()},
                {"p", J.source_count()}, {"zero_diagonal", J.zero_diagonal()},
                {"values", std::move(values)}, {"patterns", to_json(patterns)}};
}

StoredHebb hebb_from_json(const Json& j) {
    expect_kind(j, "real_matrix");
    const auto n = field(j, "n").get<std::size_t>();
    const auto values = field(j, "values").get<std::vector<double>>();
    if (values.size() != n * n) throw InvalidArgument("real_matrix value count is not n*n");
    RealMatrix W(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            W(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * n + c];
    auto patterns = real_patterns_from_json(field(j, "patterns"));
    HebbMatrix matrix(std::move(W), field(j, "zero_diagonal").get<bool>(), field(j, "p").get<std::size_t>());
    return {std::move(matrix), std::move(patterns)};
}

namespace {

Json complex_values(const ComplexMatrix& M) {
    Json values = Json::array();
    for (Eigen::Index r = 0; r < M.rows(); ++r)
        for (Eigen::Index c = 0; c < M.cols(); ++c) values.push_back(complex_to_json(M(r, c)));
    return values;
}

ComplexMatrix complex_matrix_from(const Json& values, std::size_t rows, std::size_t cols) {
    if (values.size() != rows * cols) throw InvalidArgument("complex_matrix value count does not match shape");
    ComplexMatrix M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(values[r * cols + c]);
    return M;
}

} // namespace

Json to_json(const HoloMatrix& J) {
    std::vector<ComplexState> stimuli, responses;
    for (const auto& [s, o] : J.pairs()) {
        stimuli.push_back(s);
        responses.push_back(o);
    }
    return Json{{"kind", "complex_matrix"}, {"model", "holographic"}, {"n_in", J.n_in()},
                {"n_out", J.n_out()}, {"p", J.source_count()}, {"values", complex_values(J.weights())},
                {"stimuli", to_json(stimuli)}, {"responses", to_json(responses)}};
}

HoloMatrix holo_from_json(const Json& j) {
    expect_kind(j, "complex_matrix");
    expect_model(j, "holographic");
    auto stimuli = complex_states_from_json(field(j, "stimuli"));
    auto responses = complex_states_from_json(field(j, "responses"));
    if (stimuli.size() != responses.size()) throw InvalidArgument("stimulus and response counts differ");
    std::vector<StimulusResponse> pairs;
    for (std::size_t k = 0; k < stimuli.size(); ++k) pairs.push_back({std::move(stimuli[k]), std::move(responses[k])});
    auto W = complex_matrix_from(field(j, "values"), field(j, "n_out").get<std::size_t>(),
                                 field(j, "n_in").get<std::size_t>());
    return HoloMatrix(std::move(W), std::move(pairs));
}

Json to_json(const GreenMemory& G) {
    return Json{{"kind", "complex_matrix"}, {"model", "quantum"}, {"n", G.n()},
                {"grid_weight", G.grid_weight()}, {"eigenstate_count", G.eigenstate_count()},
                {"orthonormal_source", G.orthonormal_source()}, {"values", complex_values(G.kernel())},
                {"eigenstates", to_json(G.eigenstates())}};
}

GreenMemory green_from_json(const Json& j) {
    expect_kind(j, "complex_matrix");
    expect_model(j, "quantum");
    const auto n = field(j, "n").get<std::size_t>();
    auto states = complex_states_from_json(field(j, "eigenstates"));
    if (states.size() != field(j, "eigenstate_count").get<std::size_t>()) {
        throw InvalidArgument("eigenstate count differs from \"eigenstate_count\"");
    }
    return GreenMemory(complex_matrix_from(field(j, "values"), n, n), std::move(states),
                       field(j, "grid_weight").get<double>(), field(j, "orthonormal_source").get<bool>());
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InvalidArgument(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

} // namespace assocmem
