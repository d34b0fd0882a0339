#include "sag/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace sag {

	void Task::validate() const
	{
		std::ostringstream why;
		if (period < 1)
			why << "period must be >= 1";
		else if (r_min < 0)
			why << "rmin must be >= 0";
		else if (r_max < r_min)
			why << "rmax must be >= rmin";
		else if (c_min < 1)
			why << "cmin must be >= 1";
		else if (c_max < c_min)
			why << "cmax must be >= cmin";
		else if (deadline < 1)
			why << "deadline must be >= 1";
		else
			return;
		throw Model_error("task " + std::to_string(id) + ": " + why.str());
	}

	std::string job_name(const Job& j)
	{
		return "J" + std::to_string(j.task_id) + "," + std::to_string(j.index);
	}

	std::vector<Job> expand_jobs(std::span<const Task> tasks, Time horizon)
	{
		if (tasks.empty())
			throw Model_error("empty instance");
		if (horizon < 1)
			throw Model_error("observation interval must be >= 1");

		std::vector<Job> jobs;
		for (std::size_t pos = 0; pos < tasks.size(); ++pos) {
			const Task& task = tasks[pos];
			for (std::uint32_t j = 1;; ++j) {
				const Time offset = checked_mul(static_cast<Time>(j - 1), task.period);
				const Time r_min = checked_add(task.r_min, offset);
				if (r_min >= horizon)
					break;
				Job job;
				job.task_id = task.id;
				job.index = j;
				job.task_pos = static_cast<std::uint32_t>(pos);
				job.release = {r_min, checked_add(task.r_max, offset)};
				job.cost = {task.c_min, task.c_max};
				job.deadline = checked_add(task.deadline, offset);
				job.priority = task.priority;
				jobs.push_back(job);
			}
		}
		return jobs;
	}

	Time hyperperiod(std::span<const Task> tasks)
	{
		if (tasks.empty())
			throw Model_error("empty instance");
		Time h = 1;
		for (const Task& t : tasks) {
			const Time g = std::gcd(h, t.period);
			h = checked_mul(h / g, t.period);
		}
		return h;
	}

	Rational utilization(std::span<const Task> tasks)
	{
		Rational u(0);
		for (const Task& t : tasks)
			u += Rational(t.c_max, t.period);
		return u;
	}

	Problem_instance::Problem_instance(std::vector<Task> tasks, std::optional<Time> horizon)
	: task_list(std::move(tasks))
	{
		if (task_list.empty())
			throw Model_error("empty instance");
		std::sort(task_list.begin(), task_list.end(),
		          [](const Task& a, const Task& b) { return a.id < b.id; });
		for (std::size_t i = 0; i < task_list.size(); ++i) {
			task_list[i].validate();
			if (i > 0 && task_list[i - 1].id == task_list[i].id)
				throw Model_error("duplicate task id " + std::to_string(task_list[i].id));
		}
		observation = horizon ? *horizon : hyperperiod(task_list);
		job_list = expand_jobs(task_list, observation);

		task_first.assign(task_list.size(), 0);
		task_jobs.assign(task_list.size(), 0);
		for (Job_index j = static_cast<Job_index>(job_list.size()); j-- > 0;) {
			task_first[job_list[j].task_pos] = j;
			++task_jobs[job_list[j].task_pos];
		}
		// tasks without jobs still get a well-defined (empty) range
		for (std::size_t pos = 0; pos < task_list.size(); ++pos)
			if (task_jobs[pos] == 0)
				task_first[pos] = pos == 0 ? 0 : task_first[pos - 1] + task_jobs[pos - 1];
	}

	Job_index Problem_instance::find_job(Task_id task, std::uint32_t index) const
	{
		auto it = std::lower_bound(task_list.begin(), task_list.end(), task,
		                           [](const Task& t, Task_id id) { return t.id < id; });
		if (it == task_list.end() || it->id != task || index < 1)
			return no_job;
		const auto pos = static_cast<std::size_t>(it - task_list.begin());
		if (index > task_jobs[pos])
			return no_job;
		return task_first[pos] + index - 1;
	}

	void Execution_scenario::validate(const Problem_instance& inst) const
	{
		if (release.size() != inst.num_jobs() || execution.size() != inst.num_jobs())
			throw Model_error("scenario does not cover every job");
		for (Job_index j = 0; j < inst.num_jobs(); ++j) {
			const Job& job = inst.job(j);
			if (!job.release.contains(release[j]))
				throw Model_error("release of " + job_name(job) + " out of bounds");
			if (!job.cost.contains(execution[j]))
				throw Model_error("execution time of " + job_name(job) + " out of bounds");
		}
	}

	Execution_scenario worst_case_scenario(const Problem_instance& inst)
	{
		Execution_scenario s;
		for (const Job& j : inst.jobs()) {
			s.release.push_back(j.r_max());
			s.execution.push_back(j.c_max());
		}
		return s;
	}

} // namespace sag
