#include "doctest.h"

#include "sag/model.hpp"

using namespace sag;

namespace {

	Task task(Task_id id, Time rmin, Time rmax, Time cmin, Time cmax, Time d, Time period, Priority p = 0)
	{
		return Task{id, period, rmin, rmax, cmin, cmax, d, p};
	}

	std::vector<Task> anomaly_tasks()
	{
		return {task(1, 2, 5, 5, 7, 16, 20), task(2, 1, 1, 2, 4, 8, 10), task(3, 0, 0, 1, 1, 5, 5)};
	}

} // namespace

TEST_CASE("[model] One period yields one job equal to the task")
{
	Problem_instance inst({task(1, 0, 0, 3, 4, 10, 10)}, 10);
	REQUIRE(inst.num_jobs() == 1);
	const Job& j = inst.job(0);
	CHECK(j.task_id == 1);
	CHECK(j.index == 1);
	CHECK(j.release == Interval{0, 0});
	CHECK(j.cost == Interval{3, 4});
	CHECK(j.deadline == 10);
	CHECK(job_name(j) == "J1,1");
}

TEST_CASE("[model] Hyperperiod")
{
	CHECK(hyperperiod(anomaly_tasks()) == 20);
	std::vector<Task> t{task(1, 0, 0, 1, 1, 4, 4), task(2, 0, 0, 1, 1, 6, 6)};
	CHECK(hyperperiod(t) == 12);

	std::vector<Task> huge{task(1, 0, 0, 1, 1, 1, (Time{1} << 62) - 1), task(2, 0, 0, 1, 1, 1, (Time{1} << 62) - 3)};
	CHECK_THROWS_AS(hyperperiod(huge), Overflow_error);
}

TEST_CASE("[model] Job expansion over the hyperperiod")
{
	Problem_instance inst(anomaly_tasks());
	CHECK(inst.horizon() == 20);
	REQUIRE(inst.num_jobs() == 7);
	CHECK(inst.job_count(0) == 1);
	CHECK(inst.job_count(1) == 2);
	CHECK(inst.job_count(2) == 4);

	const Job& j22 = inst.job(inst.find_job(2, 2));
	CHECK(j22.release == Interval{11, 11});
	CHECK(j22.cost == Interval{2, 4});
	CHECK(j22.deadline == 18);

	const Job& j34 = inst.job(inst.find_job(3, 4));
	CHECK(j34.release == Interval{15, 15});
	CHECK(j34.deadline == 20);
	CHECK(inst.find_job(3, 5) == no_job);
	CHECK(inst.find_job(9, 1) == no_job);

	CHECK(utilization(inst.tasks()) == Rational(19, 20));
}

TEST_CASE("[model] A job exists iff its earliest release precedes the horizon")
{
	// rmin = 5: releases at 5, 15, 25 -> two inside [0, 20)
	Problem_instance a({task(1, 5, 7, 1, 1, 10, 10)}, 20);
	CHECK(a.num_jobs() == 2);
	// rmin = 10 with T = 10, H = 10: not even the first job starts inside
	Problem_instance b({task(1, 0, 0, 1, 1, 10, 10), task(2, 10, 10, 1, 1, 10, 10)}, 10);
	CHECK(b.job_count(1) == 0);
	CHECK(b.num_jobs() == 1);
}

TEST_CASE("[model] Spans are period-invariant")
{
	Problem_instance inst(anomaly_tasks(), 60);
	for (const Job& j : inst.jobs()) {
		const Task& t = inst.tasks()[j.task_pos];
		CHECK(j.r_max() - j.r_min() == t.r_max - t.r_min);
		CHECK(j.c_max() - j.c_min() == t.c_max - t.c_min);
		CHECK(j.r_min() == t.r_min + (j.index - 1) * t.period);
		CHECK(j.deadline == t.deadline + (j.index - 1) * t.period);
	}
}

TEST_CASE("[model] Tasks are ordered by id and jobs by (task, index)")
{
	Problem_instance inst({task(7, 0, 0, 1, 1, 5, 5), task(2, 0, 0, 1, 1, 10, 10)});
	CHECK(inst.tasks()[0].id == 2);
	CHECK(inst.job(0).task_id == 2);
	CHECK(inst.job(1).task_id == 7);
	CHECK(inst.job(2).index == 2);
	CHECK(inst.first_job(1) == 1);
}

TEST_CASE("[model] Invalid instances")
{
	CHECK_THROWS_WITH_AS(Problem_instance({}), "empty instance", Model_error);
	CHECK_THROWS_AS(Problem_instance({task(1, 3, 2, 1, 1, 5, 5)}), Model_error);
	CHECK_THROWS_AS(Problem_instance({task(1, 0, 0, 0, 1, 5, 5)}), Model_error);
	CHECK_THROWS_AS(Problem_instance({task(1, 0, 0, 2, 1, 5, 5)}), Model_error);
	CHECK_THROWS_AS(Problem_instance({task(1, 0, 0, 1, 1, 5, 0)}), Model_error);
	CHECK_THROWS_AS(Problem_instance({task(1, 0, 0, 1, 1, 0, 5)}), Model_error);
	CHECK_THROWS_AS(Problem_instance({task(1, -1, 0, 1, 1, 5, 5)}), Model_error);
	CHECK_THROWS_AS(Problem_instance({task(1, 0, 0, 1, 1, 5, 5), task(1, 0, 0, 1, 1, 5, 5)}), Model_error);
	CHECK_THROWS_AS(Problem_instance({task(1, 0, 0, 1, 1, 5, 5)}, 0), Model_error);
}

TEST_CASE("[model] Constrained-deadline predicate")
{
	CHECK(task(1, 0, 2, 1, 3, 5, 5).is_constrained());
	CHECK_FALSE(task(1, 0, 3, 1, 3, 5, 5).is_constrained());
	CHECK_FALSE(task(1, 0, 0, 1, 1, 6, 5).is_constrained());
}

TEST_CASE("[model] Scenarios")
{
	Problem_instance inst(anomaly_tasks());
	auto worst = worst_case_scenario(inst);
	CHECK_NOTHROW(worst.validate(inst));
	CHECK(worst.release[inst.find_job(1, 1)] == 5);
	CHECK(worst.execution[inst.find_job(1, 1)] == 7);

	auto early = worst;
	early.release[inst.find_job(1, 1)] = 1;
	CHECK_THROWS_AS(early.validate(inst), Model_error);
	auto longer = worst;
	longer.execution[0] = 8;
	CHECK_THROWS_AS(longer.validate(inst), Model_error);
	auto short_vec = worst;
	short_vec.release.pop_back();
	CHECK_THROWS_AS(short_vec.validate(inst), Model_error);
}

TEST_CASE("[model] Job offsets that overflow are rejected")
{
	const Time big = std::numeric_limits<Time>::max() / 2;
	CHECK_THROWS_AS(Problem_instance({task(1, 0, 0, 1, 1, 5, big)}, std::numeric_limits<Time>::max()),
	                Overflow_error);
}
