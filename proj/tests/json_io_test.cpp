#include <gtest/gtest.h>

#include <fstream>

#include "subrank/errors.hpp"
#include "subrank/instances.hpp"
#include "subrank/json_io.hpp"
#include "support.hpp"

namespace subrank {
namespace {

using testing::mono;
using testing::poly;
using testing::Q;
using testing::trunc_series;

Json load(const std::string& name) {
  std::ifstream in(testing::data_path(name));
  return Json::parse(in);
}

TEST(JsonIo, Fields) {
  for (const Field& f : testing::fields()) EXPECT_EQ(field_from_json(to_json(f)), f);
  EXPECT_THROW(field_from_json(Json{{"kind", "Fp"}, {"p", "100"}}), InputError);
  EXPECT_THROW(field_from_json(Json{{"kind", "R"}}), InputError);
}

TEST(JsonIo, Series) {
  const Field f = testing::F101();
  for (const LaurentSeries& s : {poly(f, -2, {1, 0, 5}), trunc_series(f, 1, {3, 4}, 6),
                                 LaurentSeries::zero_to_precision(f, 3), LaurentSeries::zero(f)}) {
    EXPECT_EQ(series_from_json(to_json(s), f), s);
  }
  EXPECT_EQ(series_from_json(Json("7/2"), Q()), mono(Q(), 1, 0).scale(Scalar(7, 2)));
  EXPECT_EQ(series_from_json(Json("-1"), f), mono(f, -1, 0));
  EXPECT_THROW(series_from_json(Json{{"val", 0}}, Q()), InputError);
  EXPECT_THROW(series_from_json(Json("x"), Q()), InputError);
}

TEST(JsonIo, SeriesMatrixAndFallback) {
  const SeriesMatrix m = testing::sl2_curve(Q());
  EXPECT_EQ(series_matrix_from_json(to_json(m), testing::F101()), m);
  const SeriesMatrix bare = series_matrix_from_json(Json::array({Json::array({"1", "2"}), Json::array({"3", "4"})}),
                                                    testing::F101());
  EXPECT_EQ(bare.field(), testing::F101());
  EXPECT_EQ(bare(1, 0), mono(testing::F101(), 3, 0));
  EXPECT_THROW(series_matrix_from_json(Json::array({Json::array({"1", "2"}), Json::array({"3"})}), Q()),
               InputError);
}

TEST(JsonIo, DataFile) {
  const SeriesMatrix m = series_matrix_from_json(load("sl2_matrix.json"), Q());
  EXPECT_EQ(m, testing::sl2_curve(Q()));
}

TEST(JsonIo, CimRoundTrip) {
  const SeriesMatrix g = testing::sl2_curve(Q());
  const auto dec = cim_decompose(g, 16);
  const auto back = cim_from_json(to_json(dec), Q());
  EXPECT_EQ(back.h1, dec.h1);
  EXPECT_EQ(back.h2, dec.h2);
  EXPECT_EQ(back.weights, dec.weights);
  EXPECT_EQ(back.precision, dec.precision);
  EXPECT_TRUE(verify_cim(g, back).pass);
}

TEST(JsonIo, TensorRoundTrip) {
  std::mt19937_64 rng(2);
  for (const Field& f : testing::fields()) {
    const Tensor t = random_tensor(f, {2, 3, 4}, rng, 0.4);
    EXPECT_EQ(tensor_from_json(to_json(t), Q()), t);
  }
  const Json j = {{"dims", {2, 2}}, {"entries", {{{"idx", {3, 1}}, {"value", "1"}}}}};
  EXPECT_THROW(tensor_from_json(j, Q()), InputError);
}

TEST(JsonIo, SubgroupRoundTrip) {
  const Field f = Q();
  const OneParamSubgroup std_lambda = OneParamSubgroup::standard(f, {{BigInt(-2), BigInt(2)}, {BigInt("123456789012345678901234567890")}});
  EXPECT_EQ(subgroup_from_json(to_json(std_lambda), f), std_lambda);
  const Matrix basis(f, {{Scalar(1), Scalar(1)}, {Scalar(0), Scalar(1)}});
  const OneParamSubgroup conj(f, {SubgroupFactor{basis, {BigInt(1), BigInt(-1)}}});
  EXPECT_EQ(subgroup_from_json(to_json(conj), f), conj);
}

TEST(JsonIo, FactorRep) {
  EXPECT_EQ(factor_rep_from_string("std"), FactorRep::Standard);
  EXPECT_EQ(factor_rep_from_string("standard"), FactorRep::Standard);
  EXPECT_EQ(factor_rep_from_string("sym3"), FactorRep::Sym3);
  EXPECT_EQ(factor_rep_from_string(to_string(FactorRep::Sym3)), FactorRep::Sym3);
  EXPECT_THROW(factor_rep_from_string("sym2"), InputError);
}

TEST(JsonIo, WitnessRoundTrip) {
  WitnessInput in = witness_input_from_json(load("sl2_cubic_witness.json"), Q());
  ASSERT_EQ(in.reps, (std::vector<FactorRep>{FactorRep::Sym3, FactorRep::Standard}));
  const HmWitness w = hm_witness(in.g, in.p, 16, in.reps);
  const Json doc = witness_to_json(in, w);
  EXPECT_EQ(doc["kind"], "HmWitness");
  WitnessInput in2;
  const HmWitness back = witness_from_json(doc, in2);
  EXPECT_EQ(in2.p, in.p);
  EXPECT_EQ(back.q, w.q);
  EXPECT_EQ(back.q_tilde, w.q_tilde);
  EXPECT_EQ(back.shared_limit, w.shared_limit);
  EXPECT_EQ(back.lambda, w.lambda);
  EXPECT_TRUE(verify_witness(in2.g, in2.p, back).empty());
}

TEST(JsonIo, CertificateRoundTrip) {
  const auto cert = certify_generic_lower_bound(9);
  const Json doc = to_json(cert);
  EXPECT_EQ(doc["kind"], "DegenerationCertificate");
  EXPECT_EQ(doc["jacobianRank"], 14);
  EXPECT_EQ(doc["verdict"], "Certified");
  const auto back = certificate_from_json(Json::parse(doc.dump()));
  EXPECT_EQ(back.t_tilde, cert.t_tilde);
  EXPECT_EQ(back.s, cert.s);
  EXPECT_EQ(back.placements, cert.placements);
  EXPECT_EQ(back.profile, cert.profile);
  EXPECT_EQ(back.field, cert.field);
  EXPECT_EQ(back.verdict, cert.verdict);
  EXPECT_EQ(to_json(back), doc);
  EXPECT_TRUE(verify_certificate(back, testing::Fbig()).empty());
}

TEST(JsonIo, CrossoverTable) {
  const Json j = to_json(crossover_scan(200, 199));
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][1]["n"], 200);
  EXPECT_EQ(j["rows"][1]["excess_flag"], true);
}

TEST(JsonIo, Version) { EXPECT_FALSE(std::string(version()).empty()); }

}  // namespace
}  // namespace subrank
