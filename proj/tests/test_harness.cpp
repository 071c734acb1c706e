#include "doctest.h"

#include "fracspec/harness/commands.hpp"
#include "fracspec/harness/config.hpp"
#include "fracspec/harness/csv.hpp"
#include "fracspec/harness/svg.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace fracspec;
using namespace fracspec::harness;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
    {
        path = fs::temp_directory_path() / ("fracspec_test_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

RunConfig small()
{
    RunConfig c;
    c.m = 200;
    c.n_min = 1;
    c.n_max = 6;
    c.grid_points = 51;
    return c;
}

} // namespace

TEST_CASE("methods parse")
{
    const auto m = parse_methods("asym1, nystrom,integro");
    CHECK(m.size() == 3);
    CHECK(m.count(Method::Integro) == 1);
    CHECK(parse_methods("").empty());
    CHECK_THROWS_AS(parse_methods("asym3"), UsageError);
    CHECK(method_name(Method::Asym2) == "asym2");
}

TEST_CASE("config file and flag precedence")
{
    std::istringstream in("# comment\nalpha = 0.8\n\nn_max=12\nmethods=asym2,nystrom\n");
    const auto kv = parse_key_values(in);
    CHECK(kv.at("alpha") == "0.8");
    CHECK(kv.at("n_max") == "12");

    TempDir d("cfg");
    const auto file = d.path / "run.cfg";
    std::ofstream(file) << "alpha=0.8\nn-max=12\nvariant=caputo\nkernel-form=printed\n";
    RunConfig c;
    apply_file(c, file.string());
    CHECK(c.alpha == 0.8);
    CHECK(c.n_max == 12);
    CHECK(c.variant == Variant::Caputo);
    CHECK(c.kernel_form == KernelForm::LiteralPrinted);
    // flags are applied afterwards and win
    apply_setting(c, "alpha", "0.7");
    CHECK(c.alpha == 0.7);

    CHECK_THROWS_AS(apply_setting(c, "alpha", "abc"), UsageError);
    CHECK_THROWS_AS(apply_setting(c, "colour", "red"), UsageError);
    CHECK_THROWS_AS(apply_setting(c, "n-max", "3.5"), UsageError);
    CHECK_THROWS_AS(apply_file(c, (d.path / "missing.cfg").string()), UsageError);
    std::ofstream(d.path / "bad.cfg") << "alpha 0.7\n";
    CHECK_THROWS_AS(apply_file(c, (d.path / "bad.cfg").string()), UsageError);
}

TEST_CASE("validation")
{
    RunConfig c;
    CHECK_NOTHROW(validate_config(c));
    auto bad = [](auto edit) {
        RunConfig r;
        edit(r);
        CHECK_THROWS_AS(validate_config(r), UsageError);
    };
    bad([](RunConfig& r) { r.methods.clear(); });
    bad([](RunConfig& r) { r.grid_points = 2; });
    bad([](RunConfig& r) { r.n_min = 0; });
    bad([](RunConfig& r) { r.n_max = 0; });
    bad([](RunConfig& r) { r.m = 10; });
    bad([](RunConfig& r) {
        r.variant = Variant::Caputo;
        r.methods.insert(Method::Integro);
    });
    bad([](RunConfig& r) {
        r.alpha = 1.0;
        r.methods = {Method::Integro};
    });
    bad([](RunConfig& r) { r.alpha = 1.5; });
    RunConfig one;
    one.alpha = 1.0;
    CHECK_NOTHROW(validate_config(one));
    CHECK(one.order().is_classical());
}

TEST_CASE("number formatting and CSV lines")
{
    CHECK(fmt(1.0) == "1.000000000000e+00");
    CHECK(fmt(-0.000123456789012345) == "-1.234567890123e-04");
    CHECK(fmt(std::nan("")).empty());
    CHECK(fmt(std::optional<double>{}).empty());
    CHECK(fmt(std::optional<double>{2.0}) == fmt(2.0));
    CHECK(csv_line({"a", "", "c"}) == "a,,c\n");
}

TEST_CASE("svg output is deterministic")
{
    const Series s{"err", {0, 0.5, 1}, {0, 1e-3, -2e-3}};
    const auto a = line_chart("t", {s});
    CHECK(a == line_chart("t", {s}));
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("<polyline") != std::string::npos);
    CHECK(a.find("err") != std::string::npos);
}

TEST_CASE("spectrum table")
{
    RunConfig c = small();
    c.methods = {Method::Asym1, Method::Asym2, Method::Nystrom, Method::Integro};
    std::ostringstream log;
    const auto text = spectrum_csv(c, log);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,lambda_asym1,lambda_asym2,lambda_nystrom,lambda_integro,relerr_asym1,relerr_asym2,flags");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        const bool early = rows < 3;
        CHECK((line.find("regime=unverified") != std::string::npos) == early);
        CHECK(line.find(",,") == std::string::npos);
    }
    CHECK(rows == 6);
    std::ostringstream log2;
    CHECK(spectrum_csv(c, log2) == text);

    // without the reference, relative errors are empty rather than zero
    RunConfig d = small();
    d.methods = {Method::Asym1, Method::Asym2};
    std::ostringstream log3;
    const auto t2 = spectrum_csv(d, log3);
    CHECK(t2.find("\n3,") != std::string::npos);
    const auto row = t2.substr(t2.find("\n3,") + 1);
    CHECK(row.substr(0, row.find('\n')).find(",,,,,") != std::string::npos);
}

TEST_CASE("classical spectrum table")
{
    RunConfig c = small();
    c.alpha = 1.0;
    c.m = 800;
    c.n_max = 10;
    c.methods = {Method::Asym1, Method::Nystrom};
    std::ostringstream log;
    std::istringstream in(spectrum_csv(c, log));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string x; std::getline(ss, x, ',');)
            f.push_back(x);
        REQUIRE(f.size() >= 6);
        CHECK(std::abs(std::stod(f[5])) < 1e-4);
    }
}

TEST_CASE("spectrum and eigenfunction files")
{
    TempDir d("out");
    RunConfig c = small();
    c.out = d.path.string();
    c.n_min = 4;
    c.n_max = 5;
    std::ostringstream log;
    CHECK(cmd_spectrum(c, log) == exit_ok);
    CHECK(fs::exists(d.path / "spectrum.csv"));
    CHECK(fs::exists(d.path / "spectrum_nystrom.csv"));
    CHECK(!fs::exists(d.path / "integro_roots.csv"));

    c.methods.insert(Method::Integro);
    CHECK(cmd_eigenfunction(c, log) == exit_ok);
    for (int n : {4, 5}) {
        const auto csv = slurp(d.path / ("eigenfunction_n" + std::to_string(n) + ".csv"));
        CHECK(csv.rfind("x,f_nystrom,f_asym_nolayers,f_asym_layers,f_exact\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 52);
        CHECK(csv.find('\r') == std::string::npos);
        CHECK(fs::exists(d.path / ("eigenfunction_n" + std::to_string(n) + ".svg")));
    }
    const auto before = slurp(d.path / "eigenfunction_n4.svg");
    CHECK(cmd_eigenfunction(c, log) == exit_ok);
    CHECK(slurp(d.path / "eigenfunction_n4.svg") == before);

    c.methods = {Method::Asym2};
    CHECK_THROWS_AS(cmd_eigenfunction(c, log), UsageError);
}

TEST_CASE("caputo eigenfunction has empty asymptotic columns")
{
    TempDir d("caputo");
    RunConfig c = small();
    c.out = d.path.string();
    c.variant = Variant::Caputo;
    c.n_min = c.n_max = 3;
    std::ostringstream log;
    CHECK(cmd_eigenfunction(c, log) == exit_ok);
    const auto csv = slurp(d.path / "eigenfunction_n3.csv");
    const auto second = csv.substr(csv.find('\n') + 1);
    CHECK(second.substr(0, second.find('\n')).find(",,") != std::string::npos);
}

TEST_CASE("cache commands")
{
    TempDir d("cache");
    RunConfig c;
    std::ostringstream log;
    ::unsetenv("FRACSPEC_CACHE_DIR");
    CHECK_THROWS_AS(cmd_cache("stat", c, log), UsageError);

    ::setenv("FRACSPEC_CACHE_DIR", d.path.string().c_str(), 1);
    std::ostringstream s0;
    CHECK(cmd_cache("clear", c, s0) == exit_ok);
    std::ostringstream s1;
    CHECK(cmd_cache("stat", c, s1) == exit_ok);
    CHECK(s1.str().find("entries=0") != std::string::npos);

    std::ostringstream b1, b2;
    CHECK(cmd_cache("build", c, b1) == exit_ok);
    CHECK(b1.str().find("cache built") != std::string::npos);
    const auto file = d.path / phase_cache_filename(0.75);
    const auto first = slurp(file);
    CHECK(cmd_cache("build", c, b2) == exit_ok);
    CHECK(b2.str().find("cache hit") != std::string::npos);
    CHECK(slurp(file) == first);

    std::ostringstream s2;
    cmd_cache("stat", c, s2);
    CHECK(s2.str().find("entries=0") == std::string::npos);

    // the cached table is what commands use
    auto t = open_phase_table(0.75);
    CHECK(t->cache_entries() > 0);

    CHECK_THROWS_AS(cmd_cache("frobnicate", c, log), UsageError);
    std::ostringstream s3, s4;
    CHECK(cmd_cache("clear", c, s3) == exit_ok);
    cmd_cache("stat", c, s4);
    CHECK(s4.str().find("entries=0") != std::string::npos);
    ::unsetenv("FRACSPEC_CACHE_DIR");
}

TEST_CASE("validate distinguishes the kernel forms")
{
    RunConfig c;
    c.m = 300;
    std::ostringstream good;
    CHECK(cmd_validate(c, good) == exit_ok);
    CHECK(good.str().find("FAIL") == std::string::npos);

    c.kernel_form = KernelForm::LiteralPrinted;
    std::ostringstream bad;
    CHECK(cmd_validate(c, bad) == exit_check_failed);
    CHECK(bad.str().find("PASS classical_limit") != std::string::npos);
    CHECK(bad.str().find("FAIL kernel_symmetry") != std::string::npos);
    CHECK(bad.str().find("FAIL caputo_endpoint") != std::string::npos);
}
