// SPDX-License-Identifier: Apache-2.0

#include "wptsim/optimizer.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

#include "test_support.hpp"

using namespace wptsim;
using namespace wptsim::test;

namespace {

Requirements paper_requirements() {
    Requirements req;
    req.e_update_j = 0.075;
    req.window = {3.1, 0.9};
    req.margin = 1.2;
    req.objective = Objective::min_charge_time;
    req.ref_power_dbm = 0.0;
    req.ref_frequency_hz = 868e6;
    return req;
}

const RankedOption& find_option(const std::vector<RankedOption>& options,
                                const std::string& part_id) {
    for (const auto& option : options) {
        if (option.cap.part_id == part_id) return option;
    }
    throw std::runtime_error("option not ranked: " + part_id);
}

}  // namespace

TEST_CASE("shipped catalog ranking reproduces the selection study") {
    const auto options =
        select_capacitor(shipped_catalog(), paper_requirements(), paper_stack());
    REQUIRE(options.size() == 3);

    CHECK(options.front().cap.part_id == "ECA-0JM223");
    CHECK(options.front().feasible);
    CHECK(options.front().reasons.empty());

    const auto& high_esr = find_option(options, "FYD0H223ZF");
    CHECK_FALSE(high_esr.feasible);
    REQUIRE_FALSE(high_esr.reasons.empty());
    bool esr_reason = false;
    for (const auto& reason : high_esr.reasons) {
        if (reason.find("ESR") != std::string::npos) esr_reason = true;
    }
    CHECK(esr_reason);

    const auto& big_edlc = find_option(options, "FYH0H105ZF");
    CHECK(big_edlc.feasible);

    // both carry simulated charge-time predictions; the 1 F part is slower
    REQUIRE(options.front().predicted_first_charge_time_s.has_value());
    REQUIRE(big_edlc.predicted_first_charge_time_s.has_value());
    CHECK(*big_edlc.predicted_first_charge_time_s >
          *options.front().predicted_first_charge_time_s);

    // infeasible options never rank above feasible ones
    bool seen_infeasible = false;
    for (const auto& option : options) {
        if (!option.feasible) seen_infeasible = true;
        if (seen_infeasible) CHECK_FALSE(option.feasible);
    }
}

TEST_CASE("single-part catalog ranks that part first") {
    const std::vector<CapacitorSpec> one = {shipped_part("ECA-0JM223")};
    const auto options =
        select_capacitor(one, paper_requirements(), paper_stack());
    REQUIRE(options.size() == 1);
    CHECK(options.front().feasible);
    CHECK(options.front().cap.part_id == "ECA-0JM223");
}

TEST_CASE("cost cap below the cheapest part rejects everything") {
    Requirements req = paper_requirements();
    req.max_cost_eur = 1.0;
    const auto options =
        select_capacitor(shipped_catalog(), req, paper_stack());
    for (const auto& option : options) {
        CHECK_FALSE(option.feasible);
    }
}

TEST_CASE("adding a constraint never adds feasible options") {
    const auto unconstrained =
        select_capacitor(shipped_catalog(), paper_requirements(), paper_stack());
    std::set<std::string> feasible_before;
    for (const auto& option : unconstrained) {
        if (option.feasible) feasible_before.insert(option.cap.part_id);
    }

    Requirements constrained = paper_requirements();
    constrained.max_volume_cm3 = 5.0;
    const auto restricted =
        select_capacitor(shipped_catalog(), constrained, paper_stack());
    for (const auto& option : restricted) {
        if (option.feasible) {
            CHECK(feasible_before.count(option.cap.part_id) == 1);
        }
    }
}

TEST_CASE("empty catalog is a configuration error") {
    CHECK_THROWS_AS((void)select_capacitor({}, paper_requirements(),
                                           paper_stack()),
                    std::invalid_argument);
}

TEST_CASE("power sweep: the whole measured grid is Pareto-optimal") {
    Scenario templ = paper_scenario(0.0);
    const std::vector<double> grid = {-7.5, -5.0, -2.5, 0.0,
                                      2.5,  5.0,  7.5,  10.0};
    const auto front = pareto_power_sweep(templ, grid);
    REQUIRE(front.size() == grid.size());
    for (size_t i = 1; i < front.size(); ++i) {
        CHECK(front[i].p_in_dbm > front[i - 1].p_in_dbm);
        CHECK(front[i].charge_time_s < front[i - 1].charge_time_s);
        CHECK(front[i].efficiency < front[i - 1].efficiency);
    }

    // dominance-free by definition
    for (const auto& a : front) {
        for (const auto& b : front) {
            const bool dominates = b.charge_time_s <= a.charge_time_s &&
                                   b.efficiency >= a.efficiency &&
                                   (b.charge_time_s < a.charge_time_s ||
                                    b.efficiency > a.efficiency);
            CHECK_FALSE(dominates);
        }
    }
}

TEST_CASE("power sweep edge cases") {
    Scenario templ = paper_scenario(0.0);
    const auto single = pareto_power_sweep(templ, {2.5});
    REQUIRE(single.size() == 1);
    CHECK(single.front().p_in_dbm == 2.5);

    const auto deduped = pareto_power_sweep(templ, {0.0, 0.0, 5.0});
    CHECK(deduped.size() == 2);

    CHECK_THROWS_AS((void)pareto_power_sweep(templ, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)pareto_power_sweep(templ, {-30.0}),
                    std::domain_error);
}

TEST_CASE("buffer recommendation reproduces the paper design") {
    const auto rec =
        recommend_buffer(paper_requirements(), paper_stack(), shipped_catalog());
    CHECK(rec.sizing.minimal_capacitance_f ==
          doctest::Approx(0.017045454545454544).epsilon(1e-12));
    CHECK(rec.sizing.e12_choice_f == doctest::Approx(0.022).epsilon(1e-12));
    REQUIRE(rec.choice.has_value());
    CHECK(rec.choice->cap.part_id == "ECA-0JM223");
    CHECK(rec.choice->cap.technology == CapTechnology::aec);
}

TEST_CASE("wide-window requirement lands on the 1 F EDLC") {
    Requirements req = paper_requirements();
    req.e_update_j = 0.885;
    req.window = {3.1, 2.8};
    req.margin = 1.0;  // exact inversion of the stored-energy window
    const auto rec = recommend_buffer(req, paper_stack(), shipped_catalog());
    CHECK(rec.sizing.e12_choice_f == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(rec.choice.has_value());
    CHECK(rec.choice->cap.part_id == "FYH0H105ZF");
}

TEST_CASE("oversized demand yields no feasible part with nearest misses") {
    Requirements req = paper_requirements();
    req.e_update_j = 10.0;
    const auto rec = recommend_buffer(req, paper_stack(), shipped_catalog());
    CHECK_FALSE(rec.choice.has_value());
    REQUIRE_FALSE(rec.ranked.empty());
    for (const auto& option : rec.ranked) {
        CHECK_FALSE(option.feasible);
        CHECK_FALSE(option.reasons.empty());
    }
}

TEST_CASE("recommendation is invariant to catalog order") {
    auto catalog = shipped_catalog();
    std::reverse(catalog.begin(), catalog.end());
    const auto rec = recommend_buffer(paper_requirements(), paper_stack(), catalog);
    CHECK(rec.sizing.e12_choice_f == doctest::Approx(0.022).epsilon(1e-12));
    REQUIRE(rec.choice.has_value());
    CHECK(rec.choice->cap.part_id == "ECA-0JM223");
}

TEST_CASE("objective switch changes the ordering deterministically") {
    Requirements req = paper_requirements();
    req.objective = Objective::min_cost;
    const auto by_cost =
        select_capacitor(shipped_catalog(), req, paper_stack());
    CHECK(by_cost.front().cap.part_id == "ECA-0JM223");  // EUR 1.5

    req.objective = Objective::min_volume;
    const auto by_volume =
        select_capacitor(shipped_catalog(), req, paper_stack());
    // smallest usable part: the 1 F EDLC (7 cm^3) beats the AEC (9 cm^3)
    CHECK(by_volume.front().cap.part_id == "FYH0H105ZF");
}
