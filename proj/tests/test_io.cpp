#include "fixtures.hpp"
#include "oracles.hpp"

#include "sigstar/error.hpp"
#include "sigstar/io.hpp"
#include "sigstar/synth.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

using namespace sigstar;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("sigstar_io_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

Eigen::VectorXd vec(std::initializer_list<double> v)
{
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

bool same_network(const Network& a, const Network& b)
{
    if (a.name != b.name || a.input_dim != b.input_dim || a.output_dim != b.output_dim) return false;
    if (a.layers.size() != b.layers.size()) return false;
    for (std::size_t i = 0; i < a.layers.size(); ++i) {
        if (a.layers[i].index() != b.layers[i].index()) return false;
        if (const auto* da = std::get_if<DenseLayer>(&a.layers[i])) {
            const auto& db = std::get<DenseLayer>(b.layers[i]);
            if (da->weights.rows() != db.weights.rows() || da->weights.cols() != db.weights.cols()) return false;
            if (da->weights != db.weights || da->bias != db.bias) return false;
        }
    }
    return true;
}

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InvalidArgument;
}

std::string message_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("min-max normalization")
{
    const auto n = io::minmax_normalize(vec({2, 6, 4}), 2, 6);
    CHECK(n == vec({0, 1, 0.5}));
    Xoshiro256 rng(3);
    for (int k = 0; k < 100; ++k) {
        const double lo = rng.uniform(-10, 10);
        const double hi = lo + rng.uniform(0.01, 10);
        const Eigen::VectorXd x = oracle::random_vector(rng, 20, lo, hi);
        const auto back = io::minmax_denormalize(io::minmax_normalize(x, lo, hi), lo, hi);
        CHECK((back - x).cwiseAbs().maxCoeff() <= 1e-12);
    }
    CHECK_THROWS_AS(io::minmax_normalize(vec({1}), 1, 1), Error);
}

TEST_CASE("model round trip")
{
    TempDir dir;
    for (const auto& net : {synth::reference_autoencoder(0), synth::tiny_model(),
                            synth::random_network({3, 5, 2}, 4, "small")}) {
        const auto path = dir.path / (net.name + ".json");
        io::save_model(net, path);
        const auto back = io::load_model(path);
        CHECK(same_network(net, back));
    }
}

TEST_CASE("model parse errors")
{
    TempDir dir;
    const auto path = dir.path / "m.json";
    io::save_model(synth::tiny_model(), path);
    const std::string text = io::read_file(path);
    io::write_file_atomic(path, text.substr(0, text.size() / 2));
    CHECK(code_of([&] { io::load_model(path); }) == ErrorCode::Parse);
    CHECK(message_of([&] { io::load_model(path); }).find("at byte") != std::string::npos);

    auto j = io::model_to_json(synth::tiny_model());
    j["layers"][1]["type"] = "conv1d";
    const auto msg = message_of([&] { io::model_from_json(j); });
    CHECK(msg.find("conv1d") != std::string::npos);
    CHECK(msg.find("layers[1]") != std::string::npos);

    j = io::model_to_json(synth::tiny_model());
    j["format_version"] = "7";
    CHECK(code_of([&] { io::model_from_json(j); }) == ErrorCode::Parse);

    j = io::model_to_json(synth::tiny_model());
    j["input_dim"] = 3;
    CHECK_THROWS_AS(io::model_from_json(j), Error);

    CHECK(code_of([&] { io::load_model(dir.path / "missing.json"); }) == ErrorCode::Io);
}

TEST_CASE("signal CSV")
{
    const auto one = io::parse_signals_csv("id,s0,s1,s2\na,0.1,0.2,0.3\n");
    REQUIRE(one.signals.size() == 1);
    CHECK(one.length == 3);
    CHECK(one.find("a").samples == vec({0.1, 0.2, 0.3}));
    CHECK_FALSE(one.normalization.has_value());
    CHECK_THROWS_AS(one.find("b"), Error);

    const auto ragged = message_of([] { io::parse_signals_csv("id,s0,s1\na,1,2\nb,1\n", "x.csv"); });
    CHECK(ragged.find("x.csv:3") != std::string::npos);
    const auto nan = message_of([] { io::parse_signals_csv("id,s0\na,nan\n", "x.csv"); });
    CHECK(nan.find("x.csv:2") != std::string::npos);
    CHECK_THROWS_AS(io::parse_signals_csv("a,1,2\n"), Error);
    CHECK_THROWS_AS(io::parse_signals_csv(""), Error);

    const auto norm = io::parse_signals_csv("# minmax,-2,3\nid,s0\na,0.5\n");
    REQUIRE(norm.normalization.has_value());
    CHECK(norm.normalization->orig_min == -2.0);
    CHECK(norm.normalization->orig_max == 3.0);

    const auto ds = synth::make_dataset(0, 10, 10);
    io::SignalSet set{{}, synth::kSignalLength, io::MinMax{-1.5, 2.5}};
    for (const auto& s : ds.test.signals) set.signals.push_back({s.id, s.samples});
    const auto back = io::parse_signals_csv(io::signals_to_csv(set));
    REQUIRE(back.signals.size() == 10);
    for (std::size_t k = 0; k < 10; ++k) {
        CHECK(back.signals[k].id == set.signals[k].id);
        CHECK(back.signals[k].samples == set.signals[k].samples);
    }
    CHECK(back.normalization->orig_max == 2.5);
}

TEST_CASE("campaign and bounds round trips")
{
    TempDir dir;
    const auto c = generate_campaign({"a", "b", "c"}, 100, 0.25, 9);
    io::save_campaign(c, dir.path / "c.json");
    CHECK(io::load_campaign(dir.path / "c.json") == c);

    Bounds b{vec({-std::numeric_limits<double>::infinity(), 0.1, 1.0 / 3.0}),
             vec({0.0, 0.2, std::numeric_limits<double>::infinity()})};
    const auto back = io::bounds_from_json(io::bounds_to_json(b));
    CHECK(back.lower == b.lower);
    CHECK(back.upper == b.upper);
    CHECK_THROWS_AS(io::bounds_from_json(nlohmann::json::parse(R"({"lower":[0],"upper":[1,2]})")), Error);
}

TEST_CASE("star specs")
{
    const auto p = io::star_from_json(nlohmann::json::parse(R"({"kind":"point","signal":[1,2]})"));
    CHECK(p.num_generators() == 0);
    CHECK(p.center() == vec({1, 2}));

    const auto s =
        io::star_from_json(nlohmann::json::parse(R"({"kind":"spike","signal":[0,0,0],"location":1,"amp_lower":-1,"amp_upper":2})"));
    const auto r = s.get_range(1);
    CHECK(r.first == doctest::Approx(-1));
    CHECK(r.second == doctest::Approx(2));

    const auto box = SignalStar::from_bounds(vec({0, -1}), vec({1, 1})).add_state_halfspace(vec({1, 1}), 0.5);
    const auto again = io::star_from_json(io::star_to_json(box));
    CHECK(again.center() == box.center());
    CHECK(again.basis() == box.basis());
    CHECK(again.pred_matrix() == box.pred_matrix());
    CHECK(again.pred_rhs() == box.pred_rhs());

    CHECK(code_of([] { io::star_from_json(nlohmann::json::parse(R"({"kind":"zonotope"})")); }) ==
          ErrorCode::Parse);
}

TEST_CASE("report JSON")
{
    const auto r = fixture::reference_signal();
    const auto rep = build_report(fixture::five_violation_bounds(), ThresholdBand(r, fixture::kTightTau));
    const auto j = io::report_to_json(rep, GradeVariant::BandExceedance);
    CHECK(j["percentage_robustness"].get<double>() == 0.95);
    CHECK(j["worst_index"].get<int>() == 96);
    CHECK(j["verdict"] == "violated");
}

TEST_CASE("SVG plot")
{
    const auto r = fixture::reference_signal();
    const ThresholdBand band(r, fixture::kTightTau);
    const auto five = fixture::five_violation_bounds();
    const auto svg = io::render_plot(five, band, {"five violations"});
    CHECK(svg == io::render_plot(five, band, {"five violations"}));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("class=\"band\"") != std::string::npos);
    CHECK(svg.find("class=\"output-bounds\"") != std::string::npos);
    CHECK(svg.find("class=\"reference\"") != std::string::npos);
    CHECK(svg.find("data-index=\"96\"") != std::string::npos);
    CHECK(svg.find(">t=96<") != std::string::npos);
    std::size_t markers = 0;
    for (auto pos = svg.find("class=\"violation\""); pos != std::string::npos;
         pos = svg.find("class=\"violation\"", pos + 1)) {
        ++markers;
    }
    CHECK(markers == 5);

    const auto clean = io::render_plot(fixture::two_threshold_bounds(), ThresholdBand(r, fixture::kLooseTau));
    CHECK(clean.find("class=\"violation\"") == std::string::npos);
    CHECK(clean.find("class=\"worst\"") == std::string::npos);

    CHECK(io::render_plot(five, band, {"a < b & c"}).find("a &lt; b &amp; c") != std::string::npos);
}

TEST_CASE("atomic writes")
{
    TempDir dir;
    const auto target = dir.path / "out.txt";
    io::write_file_atomic(target, "first");
    io::write_file_atomic(target, "second");
    CHECK(io::read_file(target) == "second");
    CHECK_FALSE(fs::exists(dir.path / "out.txt.tmp"));

    CHECK(code_of([&] { io::write_file_atomic(dir.path / "no" / "such" / "dir.txt", "x"); }) == ErrorCode::Io);
    CHECK_FALSE(fs::exists(dir.path / "no"));

    // Renaming over a non-empty directory fails; nothing is left behind.
    fs::create_directories(dir.path / "busy" / "inner");
    CHECK(code_of([&] { io::write_file_atomic(dir.path / "busy", "x"); }) == ErrorCode::Io);
    CHECK(fs::is_directory(dir.path / "busy"));
    CHECK_FALSE(fs::exists(dir.path / "busy.tmp"));
}
