#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "ttolab/ttolab.h"

TEST(CApi, VersionAndCommands) {
  EXPECT_STREQ(ttl_version(), "0.1.0");
  EXPECT_EQ(ttl_command_count(), 13u);
  EXPECT_EQ(ttl_command_name(99), nullptr);
}

TEST(CApi, InnerSpaceKernel) {
  ttl_inner* th = nullptr;
  ASSERT_EQ(ttl_inner_from_json("{\"type\":\"monomial\",\"degree\":3}", &th), TTL_OK);
  double re = 0, im = 0;
  ASSERT_EQ(ttl_inner_eval(th, 0.5, 0.0, &re, &im), TTL_OK);
  EXPECT_NEAR(re, 0.125, 1e-15);
  ttl_space* sp = nullptr;
  ASSERT_EQ(ttl_space_create(th, 0, TTL_MODE_AUTO, &sp), TTL_OK);
  int dim = 0;
  ASSERT_EQ(ttl_space_dimension(sp, &dim), TTL_OK);
  EXPECT_EQ(dim, 3);
  std::vector<double> k(6);
  ASSERT_EQ(ttl_kernel_coeffs(sp, 0.5, 0.0, k.data(), k.size()), TTL_OK);
  EXPECT_NEAR(k[0], 1.0, 1e-14);
  EXPECT_NEAR(k[2], 0.5, 1e-14);
  EXPECT_NEAR(k[4], 0.25, 1e-14);
  EXPECT_EQ(ttl_kernel_coeffs(sp, 0.5, 0.0, k.data(), 2), TTL_ERR_VALIDATION);
  ttl_space_free(sp);
  ttl_inner_free(th);
}

TEST(CApi, OperatorRoundTrip) {
  ttl_inner* th = nullptr;
  ASSERT_EQ(ttl_inner_from_json("{\"type\":\"monomial\",\"degree\":2}", &th), TTL_OK);
  ttl_space* sp = nullptr;
  ASSERT_EQ(ttl_space_create(th, 0, TTL_MODE_EXACT, &sp), TTL_OK);
  const int idx[] = {0, -1};
  const double re[] = {2.0, 1.0}, im[] = {0.0, 0.0};
  ttl_operator* op = nullptr;
  ASSERT_EQ(ttl_operator_build_polynomial(sp, idx, re, im, 2, &op), TTL_OK);
  std::vector<double> m(8);
  ASSERT_EQ(ttl_operator_matrix(op, m.data(), m.size()), TTL_OK);
  EXPECT_NEAR(m[0], 2.0, 1e-14);  // (0,0)
  EXPECT_NEAR(m[2], 1.0, 1e-14);  // (0,1): coefficient of z^-1
  double nrm = 0;
  ASSERT_EQ(ttl_operator_norm(op, &nrm), TTL_OK);
  EXPECT_NEAR(nrm, std::sqrt((9.0 + std::sqrt(17.0)) / 2.0), 1e-10);
  ttl_operator* op2 = nullptr;
  ASSERT_EQ(ttl_operator_from_matrix(sp, m.data(), 2, &op2), TTL_OK);
  ttl_operator_free(op2);
  ttl_operator_free(op);
  ttl_space_free(sp);
  ttl_inner_free(th);
}

TEST(CApi, ErrorCodes) {
  ttl_inner* th = nullptr;
  EXPECT_EQ(ttl_inner_from_json("{\"type\":\"monomial\",\"degree\":0}", &th), TTL_ERR_VALIDATION);
  EXPECT_NE(std::string(ttl_last_error()), "");
  EXPECT_EQ(ttl_inner_from_json("not json", &th), TTL_ERR_VALIDATION);
  EXPECT_EQ(ttl_inner_from_json(nullptr, &th), TTL_ERR_VALIDATION);
  ASSERT_EQ(ttl_inner_from_json("{\"type\":\"singular\",\"atoms\":[{\"angle\":0,\"mass\":1}]}", &th), TTL_OK);
  double re, im;
  EXPECT_EQ(ttl_inner_eval(th, 1.0, 0.0, &re, &im), TTL_ERR_DOMAIN);
  ttl_inner_free(th);
}

TEST(CApi, RunCommand) {
  char* out = nullptr;
  ASSERT_EQ(ttl_run("cf-extend", "{\"coeffs\":[1,1]}", &out), TTL_OK);
  ASSERT_NE(out, nullptr);
  EXPECT_NE(std::string(out).find("1.618033988"), std::string::npos);
  ttl_string_free(out);
  EXPECT_EQ(ttl_run("cf-extend", "{\"coeffs\":[1,1],\"bogus\":1}", &out), TTL_ERR_VALIDATION);
  EXPECT_EQ(ttl_run("nope", "{}", &out), TTL_ERR_VALIDATION);
  EXPECT_EQ(ttl_run("recover",
                    "{\"inner\":{\"type\":\"blaschke\",\"zeros\":[{\"re\":0.5,\"im\":0}]},\"matrix\":[[[1,0]]],\"mu\":0.5}",
                    &out),
            TTL_ERR_DOMAIN);
}
