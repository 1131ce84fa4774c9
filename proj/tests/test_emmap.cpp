#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "resonance/emmap.hpp"

using namespace resonance;

namespace {

ReducedParams ref1() { return {-11.0 / 15, 6, 1.0 / 5, -1.0 / 5, 0}; }
ReducedParams ref2() { return {-1.0 / 10, 2, 1.0 / 5, -1.0 / 5, 0}; }

double grid_extremum_on_lemon(const ReducedParams& rp, double E, bool maximize, int n = 200) {
    double best = 0;
    bool first = true;
    for (int i = 0; i <= n; ++i) {
        const double z = -E + 2.0 * E * i / n;
        const double r = (E - z) * (E + z);
        for (int j = 0; j < n; ++j) {
            const double phi = 2.0 * M_PI * j / n;
            const double h = oracles::reduced_h(rp, E, r * std::cos(phi), z);
            if (first || (maximize ? h > best : h < best)) {
                best = h;
                first = false;
            }
        }
    }
    return best;
}

const Chamber* find_family(const Slice& s, TorusFamily fam) {
    for (const auto& ch : s.chambers)
        if (ch.family == fam) return &ch;
    return nullptr;
}

} // namespace

TEST_CASE("boundary branches") {
    SUBCASE("normal-mode branches follow the closed forms and meet at the origin") {
        const auto br = branches(ref1(), 0.06, 31);
        REQUIRE(br.size() >= 2);
        const Branch& nm1 = br[0];
        const Branch& nm2 = br[1];
        CHECK(nm1.kind == BranchKind::NM1);
        CHECK(nm2.kind == BranchKind::NM2);
        CHECK(nm1.samples.front().second == 0);
        CHECK(nm2.samples.front().second == 0);
        for (const auto& [E, h] : nm1.samples)
            CHECK(h == doctest::Approx(h_nm1(ref1(), E)).epsilon(1e-14));
        for (const auto& [E, h] : nm2.samples)
            CHECK(h == doctest::Approx(h_nm2(ref1(), E)).epsilon(1e-14));
    }
    SUBCASE("normal-mode branches cross at the global-bifurcation level") {
        const double eGB = 0.1;
        CHECK(h_nm1(ref2(), eGB) == doctest::Approx(-1e-3).epsilon(1e-14));
        CHECK(h_nm2(ref2(), eGB) == doctest::Approx(-1e-3).epsilon(1e-14));
    }
    SUBCASE("envelope branches sampled only where the contact exists") {
        const auto br = branches(ref1(), 0.06, 101);
        const ThresholdSet ts = thresholds(ref1());
        bool saw_inclined = false, saw_loop = false;
        for (const auto& b : br) {
            if (b.kind == BranchKind::InclinedEnvelope) {
                saw_inclined = true;
                for (const auto& [E, h] : b.samples) {
                    CHECK(E > *ts.e1U * (1 - 1e-6));
                    CHECK(E < *ts.e2U * (1 + 1e-6));
                    auto cu = contact_upper(ref1(), E);
                    REQUIRE(cu);
                    CHECK(h == doctest::Approx(cu->h).epsilon(1e-13));
                }
                CHECK(!b.stable_ranges.empty());  // inclined stable in the reference case
            }
            if (b.kind == BranchKind::LoopEnvelope) {
                saw_loop = true;
                CHECK(b.stable_ranges.empty());  // loops unstable in sub-case 1
            }
        }
        CHECK(saw_inclined);
        CHECK(saw_loop);
    }
    SUBCASE("degenerate case refused") {
        ReducedParams hh{-7.0 / 24, 0, -7.0 / 24, 0, 0};
        CHECK_THROWS_AS(branches(hh, 0.1, 10), Error);
    }
}

TEST_CASE("chamber slices, reference sub-case 1") {
    const ReducedParams rp = ref1();

    SUBCASE("below the first threshold: one chamber bounded by the modes") {
        const Slice s = chambers(rp, 0.01);
        REQUIRE(s.chambers.size() == 1);
        CHECK(s.chambers[0].h_lo == doctest::Approx(h_nm2(rp, 0.01)).epsilon(1e-13));
        CHECK(s.chambers[0].h_hi == doctest::Approx(h_nm1(rp, 0.01)).epsilon(1e-13));
        CHECK(s.chambers[0].lower_kind == BranchKind::NM2);
        CHECK(s.chambers[0].upper_kind == BranchKind::NM1);
    }
    SUBCASE("between e1U and e1L: two chambers") {
        const Slice s = chambers(rp, 0.027);
        REQUIRE(s.chambers.size() == 2);
        CHECK(find_family(s, TorusFamily::AroundNM2));
        CHECK(find_family(s, TorusFamily::AroundInclined));
    }
    SUBCASE("between e1L and e2L: three chambers, loop envelope interior") {
        const Slice s = chambers(rp, 0.035);
        REQUIRE(s.chambers.size() == 3);
        const Chamber* nm1 = find_family(s, TorusFamily::AroundNM1);
        const Chamber* nm2 = find_family(s, TorusFamily::AroundNM2);
        const Chamber* inc = find_family(s, TorusFamily::AroundInclined);
        REQUIRE((nm1 && nm2 && inc));
        auto cl = contact_lower(rp, 0.035);
        auto cu = contact_upper(rp, 0.035);
        REQUIRE((cl && cu));
        // both mode chambers end on the interior loop separatrix
        CHECK(nm1->h_hi == doctest::Approx(cl->h).epsilon(1e-12));
        CHECK(nm2->h_hi == doctest::Approx(cl->h).epsilon(1e-12));
        CHECK(nm1->h_lo == doctest::Approx(h_nm1(rp, 0.035)).epsilon(1e-12));
        CHECK(nm2->h_lo == doctest::Approx(h_nm2(rp, 0.035)).epsilon(1e-12));
        CHECK(inc->h_lo == doctest::Approx(cl->h).epsilon(1e-12));
        CHECK(inc->h_hi == doctest::Approx(cu->h).epsilon(1e-12));
        // the loop envelope lies strictly inside the image
        CHECK(cl->h > std::min(nm1->h_lo, nm2->h_lo));
        CHECK(cl->h < cu->h);
    }
    SUBCASE("between e2L and e2U: two chambers") {
        CHECK(chambers(rp, 0.0475).chambers.size() == 2);
    }
    SUBCASE("above e2U: one chamber again") {
        const Slice s = chambers(rp, 0.06);
        REQUIRE(s.chambers.size() == 1);
        CHECK(s.chambers[0].h_lo == doctest::Approx(h_nm1(rp, 0.06)).epsilon(1e-13));
        CHECK(s.chambers[0].h_hi == doctest::Approx(h_nm2(rp, 0.06)).epsilon(1e-13));
    }
    SUBCASE("normal-mode branch crossover flagged at -Delta/B") {
        const Slice s = chambers(rp, 0.035);
        REQUIRE(s.e_cross);
        CHECK(*s.e_cross == doctest::Approx(1.0 / 30).epsilon(1e-14));
    }
}

TEST_CASE("chamber slices, reference sub-case 2") {
    const ReducedParams rp = ref2();
    const ThresholdSet ts = thresholds(rp);

    SUBCASE("five-domain structure across the thresholds") {
        CHECK(chambers(rp, 0.05).chambers.size() == 1);   // below e1U
        CHECK(chambers(rp, 0.085).chambers.size() == 2);  // (e1U, e2L)
        CHECK(chambers(rp, 0.095).chambers.size() == 3);  // (e2L, eGB)
        CHECK(chambers(rp, 0.105).chambers.size() == 3);  // (eGB, e1L)
        CHECK(chambers(rp, 0.12).chambers.size() == 2);   // (e1L, e2U)
        CHECK(chambers(rp, 0.2).chambers.size() == 1);    // above e2U
    }
    SUBCASE("loop chamber sits between the envelopes") {
        const Slice s = chambers(rp, 0.105);
        const Chamber* loop = find_family(s, TorusFamily::AroundLoop);
        REQUIRE(loop);
        auto cl = contact_lower(rp, 0.105);
        REQUIRE(cl);
        CHECK(loop->h_lo == doctest::Approx(cl->h).epsilon(1e-12));
        // envelope ordering h_L <= h <= h_U across the slice
        auto cu = contact_upper(rp, 0.105);
        REQUIRE(cu);
        for (const auto& ch : s.chambers) {
            CHECK(ch.h_lo > cl->h - 1e-12);
            CHECK(ch.h_hi < cu->h + 1e-12);
        }
    }
    SUBCASE("normal-mode chamber height vanishes at the global bifurcation") {
        for (double eps : {2e-3, 1e-3}) {
            const Slice s = chambers(rp, *ts.eGB + eps);
            const Chamber* nm = find_family(s, TorusFamily::AroundNM1);
            if (!nm) nm = find_family(s, TorusFamily::AroundNM2);
            REQUIRE(nm);
            const double height = nm->h_hi - nm->h_lo;
            CHECK(height == doctest::Approx(std::fabs(h_nm1(rp, *ts.eGB + eps) -
                                                      h_nm2(rp, *ts.eGB + eps)))
                                .epsilon(1e-9));
            CHECK(height < 5e-3 * eps / 1e-3);
        }
        const Slice at = chambers(rp, *ts.eGB);
        CHECK(at.at_threshold);
        CHECK(at.chambers.size() == 2);  // the mode chamber has zero height exactly here
    }
}

TEST_CASE("chamber count changes by one across each contact threshold") {
    for (const ReducedParams& rp : {ref1(), ref2()}) {
        const ThresholdSet ts = thresholds(rp);
        for (const auto& t : {ts.e1U, ts.e2U, ts.e1L, ts.e2L}) {
            REQUIRE(t);
            const int below = (int)chambers(rp, *t - 1e-4).chambers.size();
            const int above = (int)chambers(rp, *t + 1e-4).chambers.size();
            CHECK(std::abs(above - below) == 1);
        }
    }
}

TEST_CASE("chamber-count transitions sit exactly at the thresholds") {
    for (const ReducedParams& rp : {ref1(), ref2()}) {
        const ThresholdSet ts = thresholds(rp);
        for (const auto& t : {ts.e1U, ts.e2U, ts.e1L, ts.e2L}) {
            REQUIRE(t);
            auto count = [&](double E) { return chambers(rp, E).chambers.size(); };
            REQUIRE(count(*t - 1e-3) != count(*t + 1e-3));
            const double found = oracles::bisect_flip(
                [&](double E) { return count(E) == count(*t - 1e-3); },
                *t - 1e-3, *t + 1e-3, 1e-10);
            CHECK(found == doctest::Approx(*t).epsilon(1e-4));
        }
    }
}

TEST_CASE("chamber heights vary continuously between thresholds") {
    const ReducedParams rp = ref1();
    const ThresholdSet ts = thresholds(rp);
    // walk the three-chamber window and track each family's height
    const double lo = *ts.e1L * 1.02, hi = *ts.e2L * 0.98;
    const int n = 40;
    const double de = (hi - lo) / n;
    double prev[3] = {-1, -1, -1};
    for (int i = 0; i <= n; ++i) {
        const double E = lo + de * i;
        const Slice s = chambers(rp, E);
        REQUIRE(s.chambers.size() == 3);
        for (const auto& ch : s.chambers) {
            const double height = ch.h_hi - ch.h_lo;
            CHECK(height > 0);
            const int f = static_cast<int>(ch.family);
            REQUIRE(f < 3);
            // the boundary branches have O(1) slopes in E
            if (prev[f] >= 0) CHECK(std::fabs(height - prev[f]) < de);
            prev[f] = height;
        }
    }
}

TEST_CASE("upper chamber boundary equals the grid maximum of the reduced Hamiltonian") {
    std::mt19937 rng(47);
    for (int i = 0; i < 12; ++i) {
        ReducedParams rp = oracles::draw_params(rng, i % 2 ? 1 : -1, i % 4 < 2 ? 1 : -1);
        std::uniform_real_distribution<double> ue(0.05, 0.8);
        const double E = ue(rng);
        const Slice s = chambers(rp, E);
        REQUIRE(!s.chambers.empty());
        double h_top = s.chambers.front().h_hi;
        double h_bot = s.chambers.front().h_lo;
        for (const auto& ch : s.chambers) {
            h_top = std::max(h_top, ch.h_hi);
            h_bot = std::min(h_bot, ch.h_lo);
        }
        const double gmax = grid_extremum_on_lemon(rp, E, true);
        const double gmin = grid_extremum_on_lemon(rp, E, false);
        const double scale = std::max({std::fabs(gmax), std::fabs(gmin), 1e-12});
        CHECK(std::fabs(h_top - gmax) < 1e-6 * scale + 1e-4 * scale);
        CHECK(std::fabs(h_bot - gmin) < 1e-6 * scale + 1e-4 * scale);
    }
}

TEST_CASE("regular/critical/empty classification") {
    const ReducedParams rp = ref1();
    const double E = 0.035;
    auto cu = contact_upper(rp, E);
    auto cl = contact_lower(rp, E);
    REQUIRE((cu && cl));

    SUBCASE("on the inclined envelope") {
        const RegularityReport r = classify_value(rp, E, cu->h);
        CHECK(r.kind == Regularity::CriticalBoundary);
        REQUIRE(r.branch);
        CHECK(*r.branch == BranchKind::InclinedEnvelope);
    }
    SUBCASE("above the global maximum") {
        CHECK(classify_value(rp, E, cu->h + 1.0).kind == Regularity::Empty);
    }
    SUBCASE("interior values are regular with a single-cycle witness") {
        const double h = 0.5 * (cl->h + cu->h);
        CHECK(classify_value(rp, E, h).kind == Regularity::Regular);
        CHECK(level_components(rp, E, h).size() == 1);
    }
    SUBCASE("normal-mode levels are critical") {
        const RegularityReport r = classify_value(rp, E, h_nm1(rp, E));
        CHECK(r.kind == Regularity::CriticalBoundary);
        REQUIRE(r.branch);
        CHECK(*r.branch == BranchKind::NM1);
    }
    SUBCASE("chamber interiors are regular at random points") {
        std::mt19937 rng(53);
        for (int i = 0; i < 20; ++i) {
            ReducedParams p = oracles::draw_params(rng, -1, 1);
            std::uniform_real_distribution<double> ue(0.05, 0.5);
            const double e = ue(rng);
            for (const auto& ch : chambers(p, e).chambers) {
                const double mid = 0.5 * (ch.h_lo + ch.h_hi);
                CHECK(classify_value(p, e, mid).kind == Regularity::Regular);
            }
        }
    }
}
