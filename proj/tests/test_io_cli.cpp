#include "kolmo/cli.hpp"
#include "kolmo/errors.hpp"
#include "kolmo/io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace kolmo {
namespace {

constexpr const char* kK1 = R"({"block_sizes": [1, 1], "matrix": [[0, 0], [1, 0]]})";
constexpr const char* kK2 = R"({"block_sizes": [1, 1], "matrix": [[1, 0], [1, 0]]})";

TEST(StructureJson, RoundTrip)
{
    const auto s = io::structure_from_text(kK2);
    EXPECT_EQ(s.dimension(), 2);
    EXPECT_FALSE(s.homogeneous());
    const auto back = io::structure_from_json(io::structure_to_json(s));
    EXPECT_EQ((back.matrix() - s.matrix()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_TRUE(std::ranges::equal(back.block_sizes(), s.block_sizes()));
}

TEST(StructureJson, Errors)
{
    EXPECT_THROW(io::structure_from_text("{"), ValidationError);
    EXPECT_THROW(io::structure_from_text(R"({"matrix": [[0]]})"), ValidationError);
    EXPECT_THROW(io::structure_from_text(R"({"block_sizes": [1, 1], "matrix": [[0, 0], [1]]})"), ValidationError);
    EXPECT_THROW(io::structure_from_text(R"({"block_sizes": [1, 1], "matrix": [[0, 0], [1, "a"]]})"),
                 ValidationError);
    EXPECT_THROW(io::structure_from_text(R"({"block_sizes": [1, 1], "matrix": [[0, 1], [0, 0]]})"), RankError);
    EXPECT_THROW(io::load_structure("/nonexistent/structure.json"), std::runtime_error);
}

TEST(Parse, ListsAndPoints)
{
    EXPECT_EQ(io::parse_list("1,-2.5,3e-2"), (std::vector<double>{1, -2.5, 3e-2}));
    EXPECT_THROW(io::parse_list("1,,2"), ValidationError);
    EXPECT_THROW(io::parse_list("1,x"), ValidationError);
    const GroupPoint z = io::parse_point("0.25,0,0.008", 2);
    EXPECT_EQ(z.t, 0.25);
    EXPECT_EQ(z.x(1), 0.008);
    EXPECT_THROW(io::parse_point("1,2", 2), DimensionError);
    const Box b = io::parse_box("-1,-1,-1:1,1,1", 2);
    EXPECT_EQ(b.lower.t, -1.0);
    EXPECT_EQ(b.upper.x(1), 1.0);
    EXPECT_THROW(io::parse_box("-1,-1,-1", 2), ValidationError);
}

TEST(Format, FifteenDigits)
{
    EXPECT_EQ(io::format(0.0), "0");
    EXPECT_EQ(io::format(-0.0), "0");
    EXPECT_EQ(io::format(0.7), "0.7");
    EXPECT_EQ(io::format(1.0 / 3.0), "0.333333333333333");
    EXPECT_EQ(io::round15(1.0 / 3.0), 0.333333333333333);
    EXPECT_EQ(io::format(GroupPoint{3.0, Eigen::Vector2d(6.0, 12.0)}), "3,6,12");
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = std::filesystem::temp_directory_path() / (std::string("kolmo_cli_") + info->name());
        std::filesystem::create_directories(dir_);
        std::ofstream(dir_ / "k1.json") << kK1;
        std::ofstream(dir_ / "k2.json") << kK2;
        std::ofstream(dir_ / "bad.json") << R"({"block_sizes": [1, 1], "matrix": [[0, 1], [0, 0]]})";
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string path(const char* name) const { return (dir_ / name).string(); }

    int run(std::vector<std::string> args)
    {
        out_.str({});
        err_.str({});
        return cli::run(args, out_, err_);
    }

    std::filesystem::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

TEST_F(CliTest, Validate)
{
    ASSERT_EQ(run({"validate", "--structure", path("k1.json")}), 0);
    EXPECT_EQ(out_.str(), "valid: true\ndimension: 2\ndepth: 1\nblock_sizes: 1 1\nhomogeneous: true\n");
    EXPECT_EQ(run({"validate", "--structure", path("bad.json")}), cli::kExitValidation);
    EXPECT_EQ(err_.str().rfind("invalid input: ", 0), 0u);
}

TEST_F(CliTest, GroupOperations)
{
    ASSERT_EQ(run({"norm", "--structure", path("k1.json"), "--point", "0.25,0,0.008"}), 0);
    EXPECT_EQ(out_.str(), "0.7\n");
    ASSERT_EQ(run({"compose", "--structure", path("k1.json"), "--left", "1,2,3", "--right", "2,4,5"}), 0);
    EXPECT_EQ(out_.str(), "3,6,12\n");
    ASSERT_EQ(run({"inverse", "--structure", path("k1.json"), "--point", "1,1,0"}), 0);
    EXPECT_EQ(out_.str(), "-1,-1,1\n");
    ASSERT_EQ(run({"distance", "--structure", path("k1.json"), "--from", "0,0,0", "--to", "0,0,1"}), 0);
    EXPECT_EQ(out_.str(), "1\n");
}

TEST_F(CliTest, Connect)
{
    ASSERT_EQ(run({"connect", "--structure", path("k1.json"), "--point", "0,0,0", "--eta", "0.001"}), 0);
    const auto doc = nlohmann::json::parse(out_.str());
    EXPECT_NEAR(doc["delta"].get<double>(), 0.1, 1e-15);
    EXPECT_NEAR(doc["v"][0].get<double>(), 1.0, 1e-15);
    EXPECT_EQ(run({"connect", "--structure", path("k1.json"), "--point", "0,0,0", "--eta", "0.9"}),
              cli::kExitValidation);
}

TEST_F(CliTest, Taylor)
{
    ASSERT_EQ(run({"taylor", "--structure", path("k1.json"), "--function", "y", "--center", "0.1,0.2,-0.1", "--order",
                   "3", "--point", "0.2,0.3,0.1"}),
              0);
    const std::string text = out_.str();
    const auto last = text.find_last_of('\n', text.size() - 2);
    EXPECT_EQ(text.substr(last + 1), "0.1\n");
}

TEST_F(CliTest, Seminorm)
{
    ASSERT_EQ(run({"seminorm", "--structure", path("k1.json"), "--function", "x1", "--box", "-2,-2,-2:2,2,2",
                   "--inner-box", "-1,-1,-1:1,1,1", "--field", "X1", "--alpha", "1", "--grid", "2"}),
              0);
    const auto doc = nlohmann::json::parse(out_.str());
    EXPECT_NEAR(doc["value"].get<double>(), 1.0, 1e-9);
}

TEST_F(CliTest, VerifyDeterministic)
{
    const std::vector<std::string> args = {"verify", "--structure", path("k2.json"), "--function", "sin_mix",
                                           "--order", "2"};
    ASSERT_EQ(run(args), 0);
    const std::string first = out_.str();
    ASSERT_EQ(run(args), 0);
    EXPECT_EQ(out_.str(), first);
    const auto doc = nlohmann::json::parse(first);
    EXPECT_TRUE(doc["pass"].get<bool>());
    EXPECT_GE(doc["slope"].get<double>(), 2.85);

    ASSERT_EQ(run({"verify", "--structure", path("k2.json"), "--function", "sin_mix", "--csv", path("s.csv")}), 0);
    std::ifstream csv(path("s.csv"));
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(header, "scale,b_distance,remainder");
}

TEST_F(CliTest, VerifyFailureExitsOne)
{
    // a negative tolerance demands slope >= 7 from a second-order remainder
    EXPECT_EQ(run({"verify", "--structure", path("k2.json"), "--function", "sin_mix", "--order", "1", "--alpha", "1",
                   "--tolerance", "-5"}),
              cli::kExitCriteriaFailed);
}

TEST_F(CliTest, ExitCodes)
{
    EXPECT_EQ(run({}), cli::kExitUsage);
    EXPECT_EQ(run({"frobnicate"}), cli::kExitUsage);
    EXPECT_EQ(run({"norm", "--structure", path("k1.json")}), cli::kExitUsage);
    EXPECT_EQ(run({"--help"}), cli::kExitOk);
    EXPECT_EQ(run({"norm", "--structure", path("k1.json"), "--point", "1,2"}), cli::kExitValidation);
    EXPECT_EQ(run({"norm", "--structure", path("missing.json"), "--point", "1,2,3"}), cli::kExitUsage);
    // e^{0.3 t} overflows
    EXPECT_EQ(run({"taylor", "--structure", path("k1.json"), "--function", "exp_mix", "--center", "3000,0,0",
                   "--order", "0"}),
              cli::kExitNumerical);
}

} // namespace
} // namespace kolmo
