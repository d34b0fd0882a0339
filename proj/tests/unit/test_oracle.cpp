#include "doctest.h"

#include <random>

#include "sag/instance_io.hpp"
#include "sag/oracle.hpp"
#include "support/random_instances.hpp"

using namespace sag;

namespace {

	Problem_instance fixture(const std::string& name)
	{
		return parse_instance(read_file(std::string(SAG_TEST_DATA_DIR) + "/" + name));
	}

	Execution_scenario random_scenario(std::mt19937_64& rng, const Problem_instance& inst)
	{
		Execution_scenario s;
		for (const Job& j : inst.jobs()) {
			s.release.push_back(testing::pick(rng, j.r_min(), j.r_max()));
			s.execution.push_back(testing::pick(rng, j.c_min(), j.c_max()));
		}
		return s;
	}

} // namespace

TEST_CASE("[oracle] The presumed worst case of the anomaly instance is fine")
{
	auto inst = fixture("anomaly.sag");
	auto t = oracle::simulate(inst, Policy_kind::edf, worst_case_scenario(inst));
	CHECK_FALSE(t.has_miss());
	const auto* j11 = t.find(inst.find_job(1, 1));
	REQUIRE(j11);
	CHECK(j11->start == 6);
	CHECK(j11->finish == 13);
	const auto* j22 = t.find(inst.find_job(2, 2));
	REQUIRE(j22);
	CHECK(j22->start == 14);
	CHECK(j22->finish == 18);
}

TEST_CASE("[oracle] An earlier release and a shorter job cause a miss")
{
	auto inst = fixture("anomaly.sag");
	auto s = parse_scenario(read_file(std::string(SAG_TEST_DATA_DIR) + "/anomaly_early_release.scn"), inst);
	auto t = oracle::simulate(inst, Policy_kind::edf, s);
	const auto* j11 = t.find(inst.find_job(1, 1));
	REQUIRE(j11);
	CHECK(j11->start == 3);
	CHECK(j11->finish == 10);
	const auto* j32 = t.find(inst.find_job(3, 2));
	REQUIRE(j32);
	CHECK(j32->start == 10);
	CHECK(j32->finish == 11);
	REQUIRE(t.misses.size() == 1);
	CHECK(t.misses[0] == oracle::Miss{inst.find_job(3, 2), 11, 10});
	// the simulation goes on after the miss
	CHECK(t.dispatches.size() == inst.num_jobs());

	oracle::Simulation_options stop;
	stop.stop_at_first_miss = true;
	auto short_trace = oracle::simulate(inst, Policy_kind::edf, s, stop);
	CHECK(short_trace.dispatches.back().job == inst.find_job(3, 2));
}

TEST_CASE("[oracle] One deterministic job")
{
	auto inst = parse_instance("task 1 T=5 rmin=0 rmax=0 cmin=1 cmax=1 d=1 p=0\n");
	auto t = oracle::simulate(inst, Policy_kind::edf, worst_case_scenario(inst));
	CHECK(t.dispatches == std::vector<oracle::Dispatch>{{0, 0, 1}});
	CHECK_FALSE(t.has_miss());
	CHECK(oracle::scenario_count(inst) == 1);
	auto r = oracle::enumerate(inst, Policy_kind::cw);
	CHECK(r.schedulable);
	CHECK(r.scenarios_checked == 1);
}

TEST_CASE("[oracle] The scheduler idles until the next release")
{
	auto inst = parse_instance("task 1 T=10 rmin=3 rmax=3 cmin=2 cmax=2 d=10 p=0\n");
	auto t = oracle::simulate(inst, Policy_kind::edf, worst_case_scenario(inst));
	CHECK(t.idle == std::vector<Interval>{{0, 2}});
	CHECK(t.dispatches == std::vector<oracle::Dispatch>{{0, 3, 5}});
}

TEST_CASE("[oracle] Invalid scenarios are refused")
{
	auto inst = fixture("anomaly.sag");
	auto s = worst_case_scenario(inst);
	s.execution[0] = 100;
	CHECK_THROWS_AS(oracle::simulate(inst, Policy_kind::edf, s), Model_error);
}

TEST_CASE("[oracle] Enumeration of the anomaly instance")
{
	auto inst = fixture("anomaly.sag");
	// J1,1: 4 releases x 3 costs, J2,1: 3 costs, J2,2: 3 costs
	CHECK(oracle::scenario_count(inst) == 108);
	auto r = oracle::enumerate(inst, Policy_kind::edf);
	CHECK_FALSE(r.schedulable);
	REQUIRE(r.failing.has_value());
	CHECK(oracle::simulate(inst, Policy_kind::edf, *r.failing).has_miss());
	// release 2, cost 6 for J1,1, then J2,1 taking 3 pushes J3,2 to 11
	const Job_index j11 = inst.find_job(1, 1), j21 = inst.find_job(2, 1);
	CHECK(r.failing->release[j11] == 2);
	CHECK(r.failing->execution[j11] == 6);
	CHECK(r.failing->execution[j21] == 3);

	// it really is the first failing one in rank order
	std::uint64_t first = 0;
	while (!oracle::simulate(inst, Policy_kind::edf, oracle::scenario_at(inst, first)).has_miss())
		++first;
	CHECK(oracle::scenario_at(inst, first) == *r.failing);
	CHECK(r.scenarios_checked == first + 1);

	oracle::Limits all;
	all.stop_at_first_failure = false;
	auto full = oracle::enumerate(inst, Policy_kind::edf, all);
	CHECK(full.scenarios_checked == 108);
	CHECK(full.failing == r.failing);
	std::uint64_t failing = 0;
	for (std::uint64_t k = 0; k < 108; ++k)
		failing += oracle::simulate(inst, Policy_kind::edf, oracle::scenario_at(inst, k)).has_miss();
	CHECK(full.failing_scenarios == failing);
}

TEST_CASE("[oracle] Enumeration of the multi-eligibility instance")
{
	auto inst = fixture("multi_eligibility.sag");
	CHECK(oracle::scenario_count(inst) == 8);
	auto r = oracle::enumerate(inst, Policy_kind::p_fp_edf);
	CHECK(r.schedulable);
	CHECK(r.scenarios_checked == 8);
	CHECK_FALSE(r.failing.has_value());
}

TEST_CASE("[oracle] Scenario ranks")
{
	auto inst = fixture("anomaly.sag");
	auto lowest = oracle::scenario_at(inst, 0);
	for (Job_index j = 0; j < inst.num_jobs(); ++j) {
		CHECK(lowest.release[j] == inst.job(j).r_min());
		CHECK(lowest.execution[j] == inst.job(j).c_min());
	}
	CHECK(oracle::scenario_at(inst, oracle::scenario_count(inst) - 1) == worst_case_scenario(inst));
	// the last execution time varies fastest
	auto second = oracle::scenario_at(inst, 1);
	CHECK(second.execution[inst.num_jobs() - 1] == lowest.execution[inst.num_jobs() - 1]);
	CHECK(second.execution[inst.find_job(2, 2)] == inst.job(inst.find_job(2, 2)).c_min() + 1);
}

TEST_CASE("[oracle] Scenario cap")
{
	auto inst = fixture("anomaly.sag");
	oracle::Limits tight;
	tight.max_scenarios = 100;
	try {
		oracle::enumerate(inst, Policy_kind::edf, tight);
		FAIL("cap not enforced");
	} catch (const oracle::Scenario_cap_exceeded& e) {
		CHECK(e.count == 108);
		CHECK(e.cap == 100);
		CHECK(std::string(e.what()).find("108") != std::string::npos);
	}

	std::vector<Task> wide;
	for (Task_id i = 1; i <= 30; ++i)
		wide.push_back(Task{i, 100, 0, 99, 1, 90, 100, 0});
	Problem_instance big(wide);
	CHECK(oracle::scenario_count(big) == std::numeric_limits<std::uint64_t>::max());
	CHECK_THROWS_AS(oracle::enumerate(big, Policy_kind::edf), oracle::Scenario_cap_exceeded);
}

TEST_CASE("[oracle] Parallel enumeration reduces deterministically")
{
	std::mt19937_64 rng(4);
	for (int i = 0; i < 40; ++i) {
		auto inst = testing::random_small_instance(rng);
		for (auto kind : {Policy_kind::edf, Policy_kind::cw}) {
			for (bool stop : {true, false}) {
				oracle::Limits one, four;
				one.stop_at_first_failure = four.stop_at_first_failure = stop;
				four.threads = 4;
				auto a = oracle::enumerate(inst, kind, one);
				auto b = oracle::enumerate(inst, kind, four);
				CHECK(a.schedulable == b.schedulable);
				CHECK(a.failing == b.failing);
				if (!stop || a.schedulable) {
					CHECK(a.finish_range == b.finish_range);
					CHECK(a.scenarios_checked == b.scenarios_checked);
					CHECK(a.failing_scenarios == b.failing_scenarios);
				}
			}
		}
	}
}

TEST_CASE("[oracle] Trace invariants on random scenarios")
{
	std::mt19937_64 rng(10);
	for (int i = 0; i < 200; ++i) {
		auto inst = testing::random_small_instance(rng);
		auto s = random_scenario(rng, inst);
		for (auto kind : all_policies) {
			auto t = oracle::simulate(inst, kind, s);
			CHECK(t == oracle::simulate(inst, kind, s));
			REQUIRE(t.dispatches.size() == inst.num_jobs());

			std::vector<std::uint32_t> done(inst.num_tasks(), 0);
			Time busy_until = 0;
			for (const auto& d : t.dispatches) {
				const Job& job = inst.job(d.job);
				CHECK(d.start >= busy_until);
				CHECK(d.start >= s.release[d.job]);
				CHECK(d.finish == d.start + s.execution[d.job]);
				CHECK(job.index == done[job.task_pos] + 1);
				++done[job.task_pos];
				busy_until = d.finish;
			}

			if (!is_work_conserving(kind))
				continue;
			// never idle while some released job is still waiting
			for (const auto& idle : t.idle)
				for (const auto& d : t.dispatches)
					CHECK_FALSE((d.start > idle.lo && s.release[d.job] <= idle.lo));
		}
	}
}
