#include <gtest/gtest.h>

#include <json.hpp>

#include "common.hpp"
#include "relcomm/error.hpp"
#include "relcomm/report_io.hpp"

using namespace relcomm;
using nlohmann::json;

TEST(ReportIo, ConditionReportRoundTrip) {
  auto a = testdata::z2();
  auto rep = check_condition(a, resolve_conditions("x32.i", std::vector<int>{2})[0], {});
  ASSERT_EQ(rep.verdict, Verdict::fails);
  ASSERT_FALSE(rep.counterexamples.empty());
  const auto text = report_to_json(rep);
  EXPECT_EQ(text.find('\n'), std::string::npos);
  auto back = report_from_json(text);
  EXPECT_EQ(back.condition, rep.condition);
  EXPECT_EQ(back.verdict, rep.verdict);
  EXPECT_EQ(back.tested, rep.tested);
  EXPECT_EQ(back.failures, rep.failures);
  EXPECT_EQ(back.capped, rep.capped);
  EXPECT_EQ(back.algebra, rep.algebra);
  EXPECT_EQ(back.strategy, rep.strategy);
  ASSERT_EQ(back.counterexamples.size(), rep.counterexamples.size());
  for (std::size_t i = 0; i < rep.counterexamples.size(); ++i) {
    EXPECT_EQ(back.counterexamples[i].witness, rep.counterexamples[i].witness);
    EXPECT_EQ(back.counterexamples[i].bindings, rep.counterexamples[i].bindings);
    EXPECT_TRUE(recheck_counterexample(a, resolve_conditions("x32.i", std::vector<int>{2})[0],
                                       back.counterexamples[i], KVariant::pure));
  }
  EXPECT_EQ(report_to_json(back), text);
  auto j = json::parse(text);
  EXPECT_EQ(j["verdict"], "fails");
  EXPECT_TRUE(j["counterexamples"][0]["witness"].is_array());
}

TEST(ReportIo, PassingReportHasNoCounterexamples) {
  auto rep = check_condition(testdata::set_algebra(2), resolve_conditions("x1c.i", std::vector<int>{2})[0], {});
  auto j = json::parse(report_to_json(rep));
  EXPECT_EQ(j["verdict"], "holds-on-tested");
  EXPECT_TRUE(j["counterexamples"].empty());
}

TEST(ReportIo, RejectsMalformed) {
  EXPECT_ANY_THROW(report_from_json("{"));
  EXPECT_ANY_THROW(report_from_json(R"({"condition":"x32.i"})"));
}

TEST(ReportIo, SuiteSummary) {
  auto s = run_suite(testdata::z2(), "x32", {});
  auto j = json::parse(suite_summary_to_json(s));
  EXPECT_EQ(j["suite"], "x32");
  EXPECT_TRUE(j["failed"].get<bool>());
  EXPECT_TRUE(j["reductions_hold"].get<bool>());
  EXPECT_TRUE(j.contains("noteworthy"));
  EXPECT_FALSE(suite_summary_to_text(s).empty());
}

TEST(ReportIo, ChainRoundTrip) {
  auto r = extract_terms_x32(testdata::maj2());
  ASSERT_EQ(r.status, ExtractionResult::Status::chain);
  const auto text = chain_to_json(*r.chain);
  auto back = chain_from_json(text);
  EXPECT_EQ(back.scheme, r.chain->scheme);
  EXPECT_EQ(back.n, r.chain->n);
  EXPECT_EQ(back.verified, r.chain->verified);
  ASSERT_EQ(back.terms.size(), r.chain->terms.size());
  for (std::size_t i = 0; i < back.terms.size(); ++i)
    EXPECT_EQ(eval_table(testdata::maj2(), back.terms[i], 4), eval_table(testdata::maj2(), r.chain->terms[i], 4));
  EXPECT_EQ(chain_to_json(back), text);
  EXPECT_FALSE(chain_to_text(back).empty());
}

TEST(ReportIo, ChainLengthMismatchRejected) {
  EXPECT_ANY_THROW(chain_from_json(R"({"scheme":"x32.vii","n":2,"terms":["w"],"verified":true})"));
}

TEST(ReportIo, RefutationRoundTrip) {
  auto r = extract_terms_x32(testdata::z2());
  ASSERT_EQ(r.status, ExtractionResult::Status::refuted);
  auto back = refutation_from_json(refutation_to_json(*r.refutation));
  EXPECT_EQ(back.scheme, r.refutation->scheme);
  EXPECT_EQ(back.condition, r.refutation->condition);
  EXPECT_EQ(back.free_size, r.refutation->free_size);
  EXPECT_EQ(back.statement, r.refutation->statement);
  EXPECT_TRUE(verify_refutation(testdata::z2(), back));
}

TEST(ReportIo, TermsDocuments) {
  auto bare = parse_terms_document(R"(["w", "z"])");
  EXPECT_EQ(bare.terms.size(), 2u);
  EXPECT_FALSE(bare.scheme.has_value());
  auto r = extract_terms_x22(testdata::maj2());
  ASSERT_EQ(r.status, ExtractionResult::Status::chain);
  auto doc = parse_terms_document(chain_to_json(*r.chain));
  ASSERT_TRUE(doc.scheme.has_value());
  EXPECT_EQ(*doc.scheme, Scheme::x22_vii);
  EXPECT_TRUE(verify_scheme(testdata::maj2(), *doc.scheme, doc.terms).all_hold);
  EXPECT_ANY_THROW(parse_terms_document("42"));
}

TEST(ReportIo, SchemeVerdict) {
  std::vector<Term> proj{Term::variable(2)};
  auto v = verify_scheme(testdata::z2(), Scheme::x32_vii, proj);
  auto j = json::parse(scheme_verdict_to_json(Scheme::x32_vii, v));
  EXPECT_FALSE(j["all_hold"].get<bool>());
  EXPECT_EQ(j["lines"][0]["identity"], "x=f_0(x,y,z,x)");
  EXPECT_EQ(j["lines"][0]["at"], json::array({0, 0, 1}));
}
