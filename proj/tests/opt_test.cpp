#include "bincover/opt.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "bincover/generators.hpp"
#include "oracles.hpp"

namespace bincover {
namespace {

Sequence seq_of(std::initializer_list<const char*> values) {
  std::vector<Rational> v;
  for (auto s : values) v.push_back(parse_rational(s));
  return Sequence::from_values(v);
}

Sequence random_seq(std::mt19937_64& rng, std::size_t n, int lo = 1, int hi = 99) {
  std::uniform_int_distribution<int> pick(lo, hi);
  std::vector<Rational> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(pick(rng), 100);
  return Sequence::from_values(v);
}

TEST(FloorLoadBound, Examples) {
  EXPECT_EQ(floor_load_bound(worked_example()), 11);
  EXPECT_EQ(floor_load_bound(seq_of({"0.5", "0.4"})), 0);
  EXPECT_EQ(floor_load_bound(seq_of({"0.5", "0.5", "0.5"})), 1);
}

TEST(OptExact, Examples) {
  const auto halves = seq_of({"0.5", "0.5", "0.5", "0.5"});
  const auto r = opt_exact(halves);
  EXPECT_EQ(r.count, 2u);
  EXPECT_EQ(verify_certificate(halves, r.certificate), 2u);

  // Load 2 but no subset sums to exactly 1, so two bins are impossible.
  const auto tricky = seq_of({"0.6", "0.6", "0.3", "0.3", "0.2"});
  EXPECT_EQ(testing::naive_partition_opt(tricky.values()), 1u);
  EXPECT_EQ(opt_exact(tricky).count, 1u);

  EXPECT_EQ(opt_exact(Sequence{}).count, 0u);
  EXPECT_THROW(opt_exact(worked_example()), LimitExceeded);
  EXPECT_THROW(opt_exact(halves, 3), LimitExceeded);
}

TEST(OptExact, WorkedExampleViaCertificateAndFloor) {
  const auto seq = worked_example();
  EXPECT_EQ(verify_certificate(seq, worked_certificate()), 11u);
  EXPECT_EQ(floor_load_bound(seq), 11);
}

TEST(OptExact, AgreesWithExhaustivePartitions) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 250; ++trial) {
    const auto seq = random_seq(rng, 1 + trial % 10, trial % 2 ? 1 : 10, trial % 3 ? 99 : 60);
    const auto r = opt_exact(seq);
    EXPECT_EQ(r.count, testing::naive_partition_opt(seq.values()));
    EXPECT_EQ(verify_certificate(seq, r.certificate), r.count);
    EXPECT_LE(static_cast<std::int64_t>(r.count), floor_load_bound(seq));
  }
}

TEST(OptExact, CertificateBinsAreMinimal) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const auto seq = random_seq(rng, 12);
    for (const auto& bin : opt_exact(seq).certificate.bins) {
      const Rational l = bin_load(seq, bin);
      for (auto idx : bin) EXPECT_LT(l - seq.items[idx].value, Rational(1));
    }
  }
}

TEST(VerifyCertificate, Rejections) {
  const auto seq = seq_of({"0.5", "0.5", "0.49", "0.5"});
  EXPECT_EQ(verify_certificate(seq, {{{0, 1}}}), 1u);
  EXPECT_THROW(verify_certificate(seq, {{{0, 1}, {1, 3}}}), InvalidCertificate);
  EXPECT_THROW(verify_certificate(seq, {{{2, 3}}}), InvalidCertificate);
  EXPECT_THROW(verify_certificate(seq, {{{0, 9}}}), InvalidCertificate);
  try {
    verify_certificate(seq, {{{0, 1}, {2, 3}}});
    FAIL();
  } catch (const InvalidCertificate& e) {
    EXPECT_NE(std::string(e.what()).find("bin 1"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("99/100"), std::string::npos);
  }
}

TEST(CertificateFile, ReadWrite) {
  std::istringstream in("# example\n12 6\n\n4 14  # comment\n");
  const auto cert = read_certificate(in);
  EXPECT_EQ(cert, (Certificate{{{12, 6}, {4, 14}}}));
  std::ostringstream out;
  write_certificate(out, cert);
  EXPECT_EQ(out.str(), "12 6\n4 14\n");
  std::istringstream bad("1 x\n");
  EXPECT_THROW(read_certificate(bad), ParseError);
}

TEST(Decompose, WorkedCertificateGroups) {
  const auto d = decompose(worked_example(), worked_certificate(), 3);
  EXPECT_EQ(d.groups.at({2, 2}), 2u);
  EXPECT_EQ(d.groups.at({2}), 5u);
  EXPECT_EQ(d.groups.at({2, 3}), 1u);
  EXPECT_EQ(d.groups.at({3, 3}), 3u);
  EXPECT_EQ(d.groups.size(), 4u);
  EXPECT_EQ(d.small_only_count, 0u);
  EXPECT_EQ(d.bin_count(), 11u);
  EXPECT_EQ(d.t_totals.at(2), 10u);
  // G_2 small mass: 0.11 + 0.20 + 0.28 + 0.33 + 0.45
  EXPECT_EQ(d.small_mass.at({2}), Rational(137, 100));
}

TEST(Decompose, EasyAndGapFlags) {
  EXPECT_TRUE(is_easy({2, 2}));
  EXPECT_FALSE(is_gap({2, 2}));
  EXPECT_TRUE(is_gap({3}));
  EXPECT_EQ(gap_deficit({3}), Rational(1, 2));
  EXPECT_EQ(gap_deficit({4}), Rational(2, 3));
  EXPECT_EQ(gap_deficit({3, 4}), Rational(1, 6));
  EXPECT_EQ(gap_deficit({4, 4}), Rational(1, 3));
  EXPECT_FALSE(is_gap({2, 3}));
  EXPECT_FALSE(is_easy({2, 3}));
  EXPECT_TRUE(is_easy({2, 3, 3}));
}

TEST(Decompose, GapGroupsCarryEnoughSmallMass) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 150; ++trial) {
    const auto seq = random_seq(rng, 12);
    const auto cert = opt_exact(seq).certificate;
    for (int k = 2; k <= 4; ++k) {
      const auto d = decompose(seq, cert, k);
      EXPECT_EQ(d.bin_count(), cert.size());
      for (const auto& [key, count] : d.groups) {
        if (!is_gap(key)) continue;
        EXPECT_GT(d.small_mass.at(key), Rational(static_cast<Rational::Int>(count)) * gap_deficit(key));
      }
    }
  }
}

TEST(CanonicalKeys, PublishedTablesMatchDoubleCounting) {
  EXPECT_EQ(canonical_keys(2).size(), 2u);
  EXPECT_EQ(canonical_keys(3).size(), 7u);
  EXPECT_EQ(canonical_keys(4).size(), 19u);  // plus G_S: twenty groups
  for (int k : {2, 4}) {
    const auto published = published_identities(k);
    const auto derived = derived_identities(k);
    ASSERT_EQ(published.size(), derived.size());
    for (std::size_t i = 0; i < published.size(); ++i) {
      std::set<std::pair<GroupKey, std::size_t>> a, b;
      for (const auto& t : published[i].terms) a.emplace(t.key, t.coefficient);
      for (const auto& t : derived[i].terms) b.emplace(t.key, t.coefficient);
      EXPECT_EQ(a, b) << "k=" << k << " t=" << published[i].t;
    }
  }
}

TEST(CountIdentities, WorkedCertificate) {
  const auto seq = worked_example();
  const auto report = verify_count_identities(decompose(seq, worked_certificate(), 3), seq);
  ASSERT_EQ(report.rows.size(), 2u);
  EXPECT_FALSE(report.published);
  EXPECT_EQ(report.rows[0].t, 2);
  EXPECT_EQ(report.rows[0].t_total, 10u);
  EXPECT_EQ(report.rows[0].group_sum, 2u * 2 + 5 + 1);
  EXPECT_TRUE(report.ok()) << report.diff();

  for (int k : {2, 4}) {
    const auto norm = normalize_certificate(seq, worked_certificate(), k);
    EXPECT_EQ(verify_certificate(seq, norm.certificate), 11u);
    const auto r = verify_count_identities(decompose(seq, norm.certificate, k), seq);
    EXPECT_TRUE(r.published);
    EXPECT_TRUE(r.ok()) << "k=" << k << "\n" << r.diff();
  }
}

TEST(CountIdentities, EmptyCovering) {
  const auto r = verify_count_identities(decompose(Sequence{}, Certificate{}, 4), Sequence{});
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.t_total, 0u);
    EXPECT_EQ(row.group_sum, 0u);
  }
  EXPECT_TRUE(r.ok());
}

TEST(CountIdentities, EasySupersetIsReportedUntilNormalized) {
  const auto seq = seq_of({"0.5", "0.5", "0.4"});
  const Certificate raw{{{0, 1, 2}}};
  const auto before = verify_count_identities(decompose(seq, raw, 3), seq);
  EXPECT_FALSE(before.ok());
  EXPECT_NE(before.diff().find("T_2"), std::string::npos);

  const auto norm = normalize_certificate(seq, raw, 3);
  EXPECT_EQ(norm.certificate, (Certificate{{{0, 1}}}));
  EXPECT_EQ(norm.unplaced, (std::vector<std::size_t>{2}));
  EXPECT_TRUE(verify_count_identities(decompose(seq, norm.certificate, 3), seq).ok());
}

TEST(NormalizeCertificate, KeepsCoverageAndCanonicalForm) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 200; ++trial) {
    const auto seq = random_seq(rng, 4 + trial % 9);
    const auto cert = opt_exact(seq).certificate;
    for (int k = 2; k <= 4; ++k) {
      const auto norm = normalize_certificate(seq, cert, k);
      EXPECT_EQ(verify_certificate(seq, norm.certificate), cert.size());
      std::vector<char> seen(seq.size(), 0);
      for (const auto& bin : norm.certificate.bins) {
        const auto key = bin_key(seq, bin, k);
        EXPECT_TRUE(is_canonical(key));
        for (auto i : bin) seen[i] = 1;
        if (is_easy(key)) {
          for (auto i : bin) EXPECT_FALSE(classify(seq.items[i].value, k).is_small());
        }
      }
      for (auto i : norm.unplaced) seen[i] = 1;
      EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](char c) { return c == 1; }));
      EXPECT_TRUE(verify_count_identities(decompose(seq, norm.certificate, k), seq).ok());
    }
  }
}

TEST(CheckBound, Examples) {
  EXPECT_TRUE(check_bound(9, 11, *bound_spec_for(3)));
  EXPECT_TRUE(check_bound(0, 0, *bound_spec_for(2)));
  EXPECT_TRUE(check_bound(2, 3, *bound_spec_for(4)));
  EXPECT_FALSE(check_bound(0, 10, *bound_spec_for(4)));
  // 3/5 * 5 - 19/15 = 26/15
  EXPECT_FALSE(check_bound(1, 5, *bound_spec_for(2)));
  EXPECT_FALSE(bound_spec_for(5).has_value());
}

TEST(CheckBound, SpecTable) {
  EXPECT_EQ(bound_specs().size(), 3u);
  EXPECT_EQ(*bound_spec_for(2), (BoundSpec{2, Rational(3, 5), Rational(19, 15)}));
  EXPECT_EQ(*bound_spec_for(3), (BoundSpec{3, Rational(9, 14), Rational(97, 42)}));
  EXPECT_EQ(*bound_spec_for(4), (BoundSpec{4, Rational(2, 3), Rational(173, 60)}));
}

}  // namespace
}  // namespace bincover
