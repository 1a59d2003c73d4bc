#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "amice/measure.hpp"
#include "amice_cli/cli.hpp"
#include "amice_cli/json_io.hpp"

using namespace amice;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
    json parsed() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        path_ = std::filesystem::temp_directory_path() /
                ("amice_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                 ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    std::string write(const std::string& name, const std::string& text) const {
        auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

private:
    std::filesystem::path path_;
};

}  // namespace

TEST(Cli, HashimotoExample) {
    auto r = run({"quat", "hashimoto", "--delta", "6", "--p", "11", "--bound", "1000"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.parsed()["q"], 5);
    EXPECT_EQ(r.parsed()["b"], 2);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, cli::kInvalidInput);
    EXPECT_EQ(run({"nonsense"}).code, cli::kInvalidInput);
    EXPECT_EQ(run({"quat", "hashimoto", "--delta", "6", "--p", "11", "--bound", "4"}).code, cli::kSearchExhausted);
    EXPECT_EQ(run({"quat", "hashimoto", "--delta", "5", "--p", "11"}).code, cli::kInvalidInput);
    EXPECT_EQ(run({"padic", "encode", "--p", "4", "--value", "3"}).code, cli::kInvalidInput);
    EXPECT_EQ(run({"arch", "local-factor", "--kappa", "1", "--r", "1", "--l", "1", "--nodes-a", "2", "--nodes-theta", "2"}).code,
              cli::kToleranceNotMet);
    auto help = run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("quat"), std::string::npos);
    auto bad = run({"quat", "hilbert", "--a", "0", "--b", "1", "--place", "2"});
    EXPECT_EQ(bad.code, cli::kInvalidInput);
    EXPECT_TRUE(bad.out.empty());
    EXPECT_FALSE(bad.err.empty());
}

TEST(Cli, PrecisionExhaustedExitCode) {
    TempDir dir;
    auto mu = run({"measure", "dirac", "--p", "3", "--z", "100", "--order", "10", "--prec", "4"});
    ASSERT_EQ(mu.code, 0);
    auto f = dir.write("mu.json", mu.out);
    auto r = run({"measure", "restrict", "--file", f, "--target", "10"});
    EXPECT_EQ(r.code, cli::kPrecisionExhausted) << r.out << r.err;
}

TEST(Cli, ArchVanishingCase) {
    auto r = run({"arch", "local-factor", "--kappa", "1", "--r", "1", "--l", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.parsed();
    EXPECT_LT(std::abs(std::stod(j["quadrature"]["re"].get<std::string>())), 1e-12);
    EXPECT_TRUE(j["within_tolerance"].get<bool>());
    auto diag = run({"arch", "local-factor", "--kappa", "2", "--r", "2", "--l", "2"}).parsed();
    EXPECT_LT(std::stod(diag["relative_error"].get<std::string>()), 1e-6);
    auto id = run({"arch", "identity", "--r", "7"});
    EXPECT_EQ(id.code, 0);
    EXPECT_TRUE(id.parsed()["holds"].get<bool>());
}

TEST(Cli, FloatsUseSeventeenDigits) {
    auto j = run({"arch", "local-factor", "--kappa", "1", "--r", "0", "--l", "0"}).parsed();
    std::string re = j["closed_form"]["re"];
    std::string mantissa = re.substr(0, re.find('e'));
    std::string digits_only;
    for (char c : mantissa)
        if (std::isdigit(static_cast<unsigned char>(c))) digits_only.push_back(c);
    const std::size_t digits = digits_only.size() - digits_only.find_first_not_of('0');
    EXPECT_EQ(digits, 17u) << re;
}

TEST(Cli, MeasureMomentsAndRoundTrip) {
    TempDir dir;
    auto mu = run({"measure", "dirac", "--p", "5", "--z", "3", "--order", "8", "--prec", "10"});
    ASSERT_EQ(mu.code, 0) << mu.err;
    auto f = dir.write("mu.json", mu.out);
    auto m = run({"measure", "moments", "--file", f, "--r", "5"});
    ASSERT_EQ(m.code, 0) << m.err;
    auto scalar = json_io::decode_scalar(m.parsed());
    EXPECT_EQ(scalar.value(), 243);

    // Output JSON decodes to the same object and re-encodes byte-identically.
    auto decoded = json_io::decode_measure(json::parse(mu.out));
    EXPECT_EQ(json_io::encode(decoded).dump(2) + "\n", mu.out);

    auto restricted = run({"measure", "restrict", "--file", f});
    ASSERT_EQ(restricted.code, 0) << restricted.err;
    auto f2 = dir.write("res.json", restricted.out);
    auto again = run({"measure", "restrict", "--file", f2});
    EXPECT_EQ(again.out, restricted.out);

    auto masses = run({"measure", "cell-mass", "--file", f, "--level", "1", "--all"});
    ASSERT_EQ(masses.code, 0);
    EXPECT_EQ(json_io::decode_scalar(masses.parsed()[3]).value(), 1);

    auto pushed = run({"measure", "push", "--file", f, "--file2", f, "--r", "4"});
    ASSERT_EQ(pushed.code, 0) << pushed.err;
    auto pf = dir.write("push.json", pushed.out);
    auto pm = run({"measure", "moments", "--file", pf, "--r", "2"});
    EXPECT_EQ(json_io::decode_scalar(pm.parsed()).value(), 81);

    auto pairs = dir.write("pairs.json", "[[" + mu.out + "," + mu.out + "]]");
    auto paired = run({"measure", "pair", "--file", pairs, "--r", "3"});
    ASSERT_EQ(paired.code, 0) << paired.err;

    auto moms = run({"measure", "moments", "--file", f, "--r", "4", "--all"});
    auto mf = dir.write("moms.json", moms.out);
    auto back = run({"measure", "from-moments", "--file", mf});
    ASSERT_EQ(back.code, 0) << back.err;
    auto rebuilt = json_io::decode_measure(back.parsed());
    EXPECT_EQ(moments(rebuilt, 4).value(), 81);
}

TEST(Cli, ModformPipeline) {
    TempDir dir;
    auto delta = run({"modform", "delta", "--trunc", "40"});
    ASSERT_EQ(delta.code, 0);
    EXPECT_EQ(delta.parsed()["coeffs"][11], "534612");
    auto f = dir.write("delta.json", delta.out);
    auto t = run({"modform", "hecke", "--file", f, "--p", "2"});
    ASSERT_EQ(t.code, 0) << t.err;
    EXPECT_EQ(t.parsed()["coeffs"][1], "-24");
    auto dep = run({"modform", "deplete", "--file", f, "--p", "3"});
    EXPECT_EQ(dep.parsed()["coeffs"][3], "0");
    EXPECT_EQ(dep.parsed()["coeffs"][2], "-24");
    auto ef = run({"modform", "euler-factor", "--ap", "534612", "--kappa", "6", "--p", "11"});
    ASSERT_EQ(ef.code, 0) << ef.err;
    Rational expected = 1 - Rational(534612) / ipow(Integer(11), 12) + Rational(1) / ipow(Integer(11), 13);
    EXPECT_EQ(ef.parsed()["value"], to_string(expected));
    auto th = run({"modform", "theta", "--file", f, "--r", "1"});
    EXPECT_EQ(th.parsed()["coeffs"][2], "-48");
    auto ma = run({"modform", "maass", "--file", f, "--r", "1"});
    ASSERT_EQ(ma.code, 0) << ma.err;
    EXPECT_EQ(ma.parsed()["k"], 14);
    auto e4 = run({"modform", "eisenstein", "--k", "4", "--trunc", "5"});
    EXPECT_EQ(e4.parsed()["coeffs"][1], "240");
    // Own output is valid input.
    auto g = dir.write("t.json", t.out);
    EXPECT_EQ(run({"modform", "hecke", "--file", g, "--p", "3", "--op", "U"}).code, 0);
}

TEST(Cli, ClassGroupsAndCharacters) {
    auto g = run({"class-group", "--disc", "-47"});
    ASSERT_EQ(g.code, 0);
    EXPECT_EQ(g.parsed()["h"], 5);
    auto chars = run({"hecke", "characters", "--disc", "-23"});
    EXPECT_EQ(chars.parsed().size(), 3u);
    auto same = run({"hecke", "pair", "--disc", "-23", "--chi", "1", "--psi", "1"}).parsed();
    auto dual = run({"hecke", "pair", "--disc", "-23", "--chi", "1", "--psi", "2"}).parsed();
    EXPECT_EQ(same["complex"]["re"], "0");
    EXPECT_EQ(dual["complex"]["re"], "1");
    auto tw = run({"hecke", "pair", "--disc", "-23", "--chi", "1", "--psi", "1", "--twist", "1"}).parsed();
    EXPECT_EQ(tw["complex"]["re"], "1");
    auto av = run({"hecke", "avatar", "--disc", "-23", "--p", "13", "--prec", "8"});
    ASSERT_EQ(av.code, 0) << av.err;
    EXPECT_EQ(av.parsed().size(), 3u);
    EXPECT_EQ(run({"hecke", "avatar", "--disc", "-23", "--p", "5"}).code, cli::kInvalidInput);
    EXPECT_EQ(run({"hecke", "pair", "--disc", "-23", "--chi", "9", "--psi", "0"}).code, cli::kInvalidInput);
}

TEST(Cli, Quaternion) {
    auto ram = run({"quat", "ramified", "--a", "-1", "--b", "-3"}).parsed();
    EXPECT_EQ(ram["places"], json::parse(R"([3, "inf"])"));
    EXPECT_EQ(run({"quat", "hilbert", "--a", "5", "--b", "-6", "--place", "3"}).parsed()["symbol"], -1);
    auto c1 = run({"quat", "conductor", "--matrix", "1,2;-4,-1", "--disc", "-7"});
    EXPECT_EQ(c1.parsed()["conductor"], 1);
    auto c2 = run({"quat", "conductor", "--matrix", "0,1;-4,0", "--disc", "-4", "--level", "1"});
    EXPECT_EQ(c2.parsed()["conductor"], 2);
    EXPECT_EQ(run({"quat", "conductor", "--matrix", "0,1;-4", "--disc", "-4"}).code, cli::kInvalidInput);
    auto u = run({"quat", "complement", "--matrix", "0,1;-4,0", "--disc", "-4"}).parsed();
    EXPECT_EQ(u["u"], json::parse(R"([["1","0"],["0","-1"]])"));
}

TEST(Cli, PadicCommands) {
    auto x = run({"padic", "encode", "--p", "7", "--value", "-1/3", "--prec", "5"});
    ASSERT_EQ(x.code, 0);
    TempDir dir;
    auto f = dir.write("x.json", x.out);
    auto back = run({"padic", "decode", "--file", f}).parsed();
    EXPECT_EQ(json_io::decode_scalar(back["scalar"]).agrees_with(json_io::decode_scalar(x.parsed())), true);
    auto zero = run({"padic", "encode", "--p", "7", "--value", "0", "--prec", "5"}).parsed();
    EXPECT_EQ(zero["val"], "inf");
    auto sq = run({"padic", "sqrt", "--d", "2", "--p", "7", "--prec", "6"});
    ASSERT_EQ(sq.code, 0) << sq.err;
    auto bs = run({"padic", "binomial", "--p", "5", "--z", "3", "--order", "5"}).parsed();
    EXPECT_EQ(bs["domain"], "padic");
    EXPECT_EQ(bs["coeffs"].size(), 5u);
}

TEST(Cli, ConfigAndEnvironment) {
    TempDir dir;
    auto cfg = dir.write("cfg.json", R"({"precision": 7, "order": 6})");
    auto r = run({"--config", cfg, "measure", "dirac", "--p", "3", "--z", "2"}).parsed();
    EXPECT_EQ(r["order"], 6);
    EXPECT_EQ(r["mahler"][0]["prec"], 7);
    // Explicit flags beat the config file.
    auto r2 = run({"--config", cfg, "measure", "dirac", "--p", "3", "--z", "2", "--order", "4"}).parsed();
    EXPECT_EQ(r2["order"], 4);
    auto bad = dir.write("bad.json", R"({"colour": 1})");
    EXPECT_EQ(run({"--config", bad, "quat", "hilbert", "--a", "1", "--b", "1", "--place", "2"}).code,
              cli::kInvalidInput);

    ::setenv("AMICE_PRECISION", "9", 1);
    auto e = run({"padic", "encode", "--p", "5", "--value", "2"}).parsed();
    EXPECT_EQ(e["prec"], 9);
    auto over = run({"--config", cfg, "padic", "encode", "--p", "5", "--value", "2"}).parsed();
    EXPECT_EQ(over["prec"], 7);
    ::unsetenv("AMICE_PRECISION");
}

TEST(Cli, DeterministicOutput) {
    const std::vector<std::vector<std::string>> cmds = {
        {"arch", "local-factor", "--kappa", "2", "--r", "1", "--l", "1"},
        {"arch", "xplus-check", "--l", "1", "--m", "1"},
        {"hecke", "characters", "--disc", "-56"},
        {"class-group", "--disc", "-140"},
    };
    for (const auto& c : cmds) {
        auto a = run(c), b = run(c);
        EXPECT_EQ(a.code, 0) << a.err;
        EXPECT_EQ(a.out, b.out);
    }
}
