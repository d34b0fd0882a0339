#include "sag/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace sag {

	Parse_error::Parse_error(std::size_t line, const std::string& what)
	: std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what)
	, line(line)
	{
	}

	namespace {

		std::vector<std::string_view> split_words(std::string_view line)
		{
			std::vector<std::string_view> words;
			std::size_t i = 0;
			while (i < line.size()) {
				while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
					++i;
				std::size_t start = i;
				while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
					++i;
				if (i > start)
					words.push_back(line.substr(start, i - start));
			}
			return words;
		}

		std::int64_t parse_int(std::string_view word, std::size_t line, std::string_view what)
		{
			std::int64_t v = 0;
			auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
			if (ec != std::errc() || ptr != word.data() + word.size())
				throw Parse_error(line, "malformed " + std::string(what) + " '" + std::string(word) + "'");
			return v;
		}

		// Splits `text` into (line number, words) pairs, dropping comments and blanks.
		template<class F>
		void for_each_directive(std::string_view text, F&& f)
		{
			std::size_t line_no = 0;
			while (!text.empty()) {
				++line_no;
				auto nl = text.find('\n');
				std::string_view line = text.substr(0, nl);
				text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
				if (auto hash = line.find('#'); hash != std::string_view::npos)
					line = line.substr(0, hash);
				auto words = split_words(line);
				if (!words.empty())
					f(line_no, words);
			}
		}

		std::map<std::string, std::int64_t, std::less<>> parse_fields(
			std::span<const std::string_view> words, std::size_t line,
			std::initializer_list<std::string_view> allowed)
		{
			std::map<std::string, std::int64_t, std::less<>> fields;
			for (auto w : words) {
				auto eq = w.find('=');
				if (eq == std::string_view::npos)
					throw Parse_error(line, "expected key=value, got '" + std::string(w) + "'");
				auto key = w.substr(0, eq);
				if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
					throw Parse_error(line, "unknown field '" + std::string(key) + "'");
				if (fields.count(key))
					throw Parse_error(line, "duplicate field '" + std::string(key) + "'");
				fields.emplace(std::string(key), parse_int(w.substr(eq + 1), line, key));
			}
			for (auto key : allowed)
				if (!fields.count(key))
					throw Parse_error(line, "missing field '" + std::string(key) + "'");
			return fields;
		}

	} // namespace

	Problem_instance parse_instance(std::string_view text)
	{
		std::vector<Task> tasks;
		std::optional<Time> horizon;
		std::set<Task_id> seen;

		for_each_directive(text, [&](std::size_t line, const std::vector<std::string_view>& words) {
			if (words[0] == "H") {
				if (words.size() != 2)
					throw Parse_error(line, "expected 'H <int>'");
				if (horizon)
					throw Parse_error(line, "duplicate H directive");
				horizon = parse_int(words[1], line, "H");
				if (*horizon < 1)
					throw Parse_error(line, "H must be >= 1");
			} else if (words[0] == "task") {
				if (words.size() < 2)
					throw Parse_error(line, "expected task id");
				auto id = parse_int(words[1], line, "task id");
				if (id < 0 || id > std::numeric_limits<Task_id>::max())
					throw Parse_error(line, "task id out of range");
				auto f = parse_fields(std::span(words).subspan(2), line,
				                      {"T", "rmin", "rmax", "cmin", "cmax", "d", "p"});
				Task t;
				t.id = static_cast<Task_id>(id);
				t.period = f["T"];
				t.r_min = f["rmin"];
				t.r_max = f["rmax"];
				t.c_min = f["cmin"];
				t.c_max = f["cmax"];
				t.deadline = f["d"];
				if (f["p"] < 0 || f["p"] > std::numeric_limits<Priority>::max())
					throw Parse_error(line, "priority out of range");
				t.priority = static_cast<Priority>(f["p"]);
				try {
					t.validate();
				} catch (const Model_error& e) {
					throw Parse_error(line, e.what());
				}
				if (!seen.insert(t.id).second)
					throw Parse_error(line, "duplicate task id " + std::to_string(t.id));
				tasks.push_back(t);
			} else {
				throw Parse_error(line, "unknown directive '" + std::string(words[0]) + "'");
			}
		});

		if (tasks.empty())
			throw Parse_error(0, "empty instance");
		try {
			return Problem_instance(std::move(tasks), horizon);
		} catch (const Model_error& e) {
			throw Parse_error(0, e.what());
		} catch (const Overflow_error& e) {
			throw Parse_error(0, e.what());
		}
	}

	std::string write_instance(const Problem_instance& inst)
	{
		std::ostringstream os;
		os << "H " << inst.horizon() << '\n';
		for (const Task& t : inst.tasks())
			os << "task " << t.id << " T=" << t.period << " rmin=" << t.r_min
			   << " rmax=" << t.r_max << " cmin=" << t.c_min << " cmax=" << t.c_max
			   << " d=" << t.deadline << " p=" << t.priority << '\n';
		return os.str();
	}

	nlohmann::json instance_to_json(const Problem_instance& inst)
	{
		nlohmann::json tasks = nlohmann::json::array();
		for (const Task& t : inst.tasks())
			tasks.push_back({{"id", t.id}, {"T", t.period}, {"rmin", t.r_min},
			                 {"rmax", t.r_max}, {"cmin", t.c_min}, {"cmax", t.c_max},
			                 {"d", t.deadline}, {"p", t.priority}});
		nlohmann::json jobs = nlohmann::json::array();
		for (const Job& j : inst.jobs())
			jobs.push_back({{"task", j.task_id}, {"job", j.index}, {"rmin", j.r_min()},
			                {"rmax", j.r_max()}, {"cmin", j.c_min()}, {"cmax", j.c_max()},
			                {"d", j.deadline}, {"p", j.priority}});
		return {{"H", inst.horizon()}, {"tasks", tasks}, {"jobs", jobs}};
	}

	Execution_scenario parse_scenario(std::string_view text, const Problem_instance& inst)
	{
		Execution_scenario s;
		s.release.assign(inst.num_jobs(), 0);
		s.execution.assign(inst.num_jobs(), 0);
		std::vector<bool> seen(inst.num_jobs(), false);

		for_each_directive(text, [&](std::size_t line, const std::vector<std::string_view>& words) {
			if (words[0] != "J" || words.size() != 5)
				throw Parse_error(line, "expected 'J <task> <index> r=<int> c=<int>'");
			auto task = parse_int(words[1], line, "task id");
			auto index = parse_int(words[2], line, "job index");
			Job_index j = no_job;
			if (task >= 0 && index >= 1 && task <= std::numeric_limits<Task_id>::max()
			    && index <= std::numeric_limits<std::uint32_t>::max())
				j = inst.find_job(static_cast<Task_id>(task), static_cast<std::uint32_t>(index));
			if (j == no_job)
				throw Parse_error(line, "no such job J" + std::string(words[1]) + "," + std::string(words[2]));
			if (seen[j])
				throw Parse_error(line, "job listed twice");
			seen[j] = true;
			auto f = parse_fields(std::span(words).subspan(3), line, {"r", "c"});
			s.release[j] = f["r"];
			s.execution[j] = f["c"];
			const Job& job = inst.job(j);
			if (!job.release.contains(s.release[j]))
				throw Parse_error(line, "release of " + job_name(job) + " outside its jitter window");
			if (!job.cost.contains(s.execution[j]))
				throw Parse_error(line, "execution time of " + job_name(job) + " outside its bounds");
		});

		for (Job_index j = 0; j < inst.num_jobs(); ++j)
			if (!seen[j])
				throw Parse_error(0, "scenario is missing " + job_name(inst.job(j)));
		return s;
	}

	std::string write_scenario(const Execution_scenario& s, const Problem_instance& inst)
	{
		std::ostringstream os;
		for (Job_index j = 0; j < inst.num_jobs(); ++j) {
			const Job& job = inst.job(j);
			os << "J " << job.task_id << ' ' << job.index << " r=" << s.release[j]
			   << " c=" << s.execution[j] << '\n';
		}
		return os.str();
	}

	std::string read_file(const std::string& path)
	{
		std::ifstream in(path, std::ios::binary);
		if (!in)
			throw std::runtime_error("cannot open '" + path + "'");
		std::ostringstream ss;
		ss << in.rdbuf();
		return ss.str();
	}

} // namespace sag
