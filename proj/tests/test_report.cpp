#include <gtest/gtest.h>

#include "sl2sheaf/report.hpp"
#include "sl2sheaf/verify.hpp"

using namespace sl2sheaf;

namespace {

Matrix from_json(const Field& f, const json& rows) {
  std::vector<std::vector<long long>> v;
  for (const auto& row : rows) v.push_back(row.get<std::vector<long long>>());
  return Matrix::from_ints(f, v);
}

}  // namespace

TEST(Report, ModuleRoundTrip) {
  const Sl2Module M = projective(Field(5), 2);
  const json j = to_json(M);
  EXPECT_EQ(j["p"], 5);
  EXPECT_EQ(j["dim"], 10);
  EXPECT_EQ(j["lambda"], 2);
  EXPECT_TRUE(j["xi"].is_null());
  EXPECT_FALSE(j.contains("field"));
  const Field k(5);
  EXPECT_EQ(from_json(k, j["E"]), M.e());
  EXPECT_EQ(from_json(k, j["F"]), M.f());
  EXPECT_EQ(from_json(k, j["H"]), M.h());
  // survives a text round trip
  EXPECT_EQ(json::parse(j.dump()), j);
}

TEST(Report, ProfileAndKernel) {
  const Sl2Module M = phi(5, 7, 1);
  const json prof = to_json(jordan_profile(M));
  EXPECT_EQ(prof["generic"], "[5]");
  ASSERT_EQ(prof["exceptional"].size(), 1u);
  EXPECT_EQ(prof["exceptional"][0]["type"], "[3][2]");
  EXPECT_EQ(prof["exceptional"][0]["point"], json({1, 1}));

  const Sl2Module V = weyl(5, 2);
  const json ker = to_json(V, kernel_sheaf(V));
  EXPECT_EQ(ker["module"], "V(2)");
  EXPECT_EQ(ker["object"], "ker^1");
  EXPECT_EQ(ker["certified"], true);
  EXPECT_EQ(ker["splitting"], json({-2}));
  ASSERT_EQ(ker["generators"].size(), 1u);
  EXPECT_EQ(ker["generators"][0]["degree"], 2);
  EXPECT_EQ(ker["hilbert"][2]["dim"], 1);
}

TEST(Report, FiAndHeller) {
  const json fi = to_json(weyl(5, 2), fi_data(weyl(5, 2), 3));
  for (const char* key : {"module", "object", "certified", "generators", "splitting", "hilbert", "rank", "degree_sum", "tail_stable"})
    EXPECT_TRUE(fi.contains(key)) << key;
  EXPECT_EQ(fi["object"], "F_3");
  EXPECT_EQ(fi["rank"], 1);
  EXPECT_EQ(fi["degree_sum"], -2);

  const json h = to_json(heller_shift(5, 2));
  EXPECT_EQ(h["label"], "V(6)");
  EXPECT_EQ(h["lambda_shift"], 6);
  EXPECT_EQ(h["module"]["dim"], 7);
  EXPECT_EQ(to_json(heller_shift(5, 4)), json({{"projective", true}, {"label", "0"}}));
}

TEST(Report, VerificationIsDeterministicAcrossWorkerCounts) {
  VerifyConfig cfg;
  cfg.primes = {3};
  cfg.criteria = {1, 3, 4, 7, 9};
  cfg.jobs = 1;
  const json a = to_json(run_verification(cfg));
  cfg.jobs = 3;
  const json b = to_json(run_verification(cfg));
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["status"], "pass");
  EXPECT_FALSE(summary_text(run_verification(cfg)).empty());
}
