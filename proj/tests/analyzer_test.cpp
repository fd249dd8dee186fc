#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "germlab/analyzer.hpp"

using namespace germlab;

namespace {

std::string data(const std::string& rel) { return std::string(GERMLAB_DATA_DIR) + "/" + rel; }

GermFileError parse_error(const std::string& text) {
  try {
    parse_germ_text(text, "t.germ");
  } catch (const GermFileError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return GermFileError("t.germ", 0, 0, "none");
}

}  // namespace

TEST(GermFile, ParsesGermAndUnfolding) {
  auto h2 = parse_germ_file(data("germs/h2.germ"));
  ASSERT_TRUE(h2.germ);
  EXPECT_FALSE(h2.is_unfolding);
  EXPECT_EQ(to_string(*h2.germ), "(x, y^3, y^5 + x*y)");
  auto cusp = parse_germ_file(data("germs/cusp_opsu.germ"));
  EXPECT_TRUE(cusp.is_unfolding);
  EXPECT_EQ(cusp.unfolding().m(), 1u);
  EXPECT_EQ(to_string(cusp.unfolding().base()), "(x^2, x^3)");
}

TEST(GermFile, ListsSpanLinesAndNotesAreKept) {
  auto in = parse_germ_text("# comment\nsource = [x,\n  y]\ntarget = [X, Y]\ncomponents = [\"x\", \"y^2\"]  # trailing\n"
                            "note_origin = \"hand written\"\n");
  ASSERT_TRUE(in.germ);
  EXPECT_EQ(in.germ->n(), 2u);
  EXPECT_EQ(in.notes.at("origin"), "hand written");
}

TEST(GermFile, FunctionFile) {
  auto in = parse_germ_file(data("functions/brieskorn_3_5.fn"));
  ASSERT_TRUE(in.function);
  EXPECT_FALSE(in.germ);
  EXPECT_EQ(to_string(*in.function), "y^5 + x^3");
}

TEST(GermFile, ErrorsCarryPositions) {
  auto e = parse_error("source = [x]\ntarget = [X]\ncomponents = [\"x + 1\"]\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 16u);
  EXPECT_NE(std::string(e.what()).find("germ must fix origin"), std::string::npos);
  auto k = parse_error("source = [x]\ntarget = [X]\ncomponents = [\"x\"]\ncolour = red\n");
  EXPECT_EQ(k.line(), 4u);
  EXPECT_NE(std::string(k.what()).find("unknown key"), std::string::npos);
  auto p = parse_error("source = [x]\ntarget = [X]\ncomponents = [\"x^2 + * x\"]\n");
  EXPECT_EQ(p.line(), 3u);
  EXPECT_GT(p.column(), 15u);
  EXPECT_EQ(parse_error("source = [x\n").line(), 2u);
  EXPECT_EQ(parse_error("source [x]\n").column(), 8u);
  parse_error("source = [x]\ntarget = [X, Y]\ncomponents = [\"x\"]\n");
  parse_error("source = [x, l]\ntarget = [X, L]\ncomponents = [\"x^2\", \"l\"]\nparams = [x]\n");
  parse_error("source = [x, l]\ntarget = [X, L]\ncomponents = [\"x^2\", \"l^2\"]\nparams = [l]\n");
  parse_error("vars = [x]\nfunction = \"x^2 + 1\"\n");
  EXPECT_THROW(parse_germ_file(data("germs/no_such_file.germ")), GermFileError);
}

TEST(Run, ExitCodesAndVerdicts) {
  auto lips = run("qh", parse_germ_file(data("germs/lips.germ")));
  EXPECT_EQ(lips.exit_code, kExitOk);
  EXPECT_EQ(lips.report["verdict"]["status"], "YES");
  EXPECT_EQ(lips.report["schema"], kReportSchema);

  auto mt = run("mu-tau", parse_germ_file(data("functions/brieskorn_3_5.fn")));
  EXPECT_EQ(mt.exit_code, kExitOk);
  EXPECT_EQ(mt.report["milnor"]["value"], 8);
  EXPECT_EQ(mt.report["tjurina"]["value"], 8);
  EXPECT_EQ(mt.report["saito"]["status"], "YES");

  // n != p: quasi-homogeneity decision is not available
  EXPECT_EQ(run("qh", parse_germ_file(data("germs/h2.germ"))).exit_code, kExitUnsupported);
  EXPECT_EQ(run("mu-tau", parse_germ_file(data("germs/h2.germ"))).exit_code, kExitUnsupported);

  auto sub = run("substantial", parse_germ_file(data("germs/augmented_cubic_opsu.germ")));
  EXPECT_EQ(sub.exit_code, kExitOk);
  EXPECT_EQ(sub.report["verdict"]["status"], "YES");

  auto weak = run("weak", parse_germ_file(data("germs/cusp_opsu.germ")));
  EXPECT_EQ(weak.report["verdict"]["status"], "YES");

  auto lift = run("lift", parse_germ_file(data("germs/fold_family.germ")));
  EXPECT_EQ(lift.exit_code, kExitOk);
  EXPECT_EQ(lift.report["lift"]["generators"].size(), 2u);
  EXPECT_EQ(lift.report["lift"]["discriminant"], "4*L^3 + 27*Y^2");
}

TEST(Run, AnalyzeCusp) {
  auto r = run("analyze", parse_germ_file(data("germs/cusp.germ")));
  ASSERT_EQ(r.exit_code, kExitOk);
  const auto& a = r.report["analysis"];
  EXPECT_EQ(a["corank"], 1);
  EXPECT_EQ(a["ae_codim"]["value"], 1);
  EXPECT_EQ(a["unfolding_parameters"], 1);
  EXPECT_EQ(a["unfolding"]["substantial"]["status"], "YES");
  std::ostringstream os;
  render_text(os, r.report);
  EXPECT_NE(os.str().find("substantial: YES"), std::string::npos);
}

TEST(Run, CorpusIsKeyedByPathAndStable) {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "germlab_corpus_test";
  fs::remove_all(dir);
  fs::create_directories(dir / "sub");
  fs::copy_file(data("functions/node.fn"), dir / "b.fn");
  fs::copy_file(data("functions/brieskorn_3_5.fn"), dir / "sub" / "a.fn");
  std::ofstream(dir / "bad.fn") << "vars = [x]\nfunction = \"x +\"\n";
  auto one = run_corpus("mu-tau", dir.string());
  auto two = run_corpus("mu-tau", dir.string());
  EXPECT_EQ(one.report.dump(), two.report.dump());
  EXPECT_EQ(one.exit_code, kExitInputError);
  std::vector<std::string> keys;
  for (auto it = one.report["reports"].begin(); it != one.report["reports"].end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"b.fn", "bad.fn", "sub/a.fn"}));
  EXPECT_EQ(one.report["reports"]["bad.fn"]["error"]["kind"], "input");
  fs::remove_all(dir);
}
