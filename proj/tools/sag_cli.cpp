#include "sag_cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "sag/analysis.hpp"
#include "sag/dot.hpp"
#include "sag/gen.hpp"
#include "sag/instance_io.hpp"
#include "sag/oracle.hpp"
#include "sag/report.hpp"

namespace sag::cli {

	using nlohmann::json;

	namespace {

		struct Usage_error : std::runtime_error {
			using std::runtime_error::runtime_error;
		};

		struct Options {
			std::vector<std::string> inputs;
			std::string policy = "edf";
			std::string mode = "me";
			std::string format = "text";
			std::string out_path;
			bool exhaustive_misses = false;
			unsigned threads = 1;
			unsigned jobs = 1;
			std::string scenario_path;
			std::uint64_t max_scenarios = 0; // 0: environment or default

			// gen
			std::uint32_t tasks = 3;
			double util = 0.5;
			double rj = 0;
			double rc = 0;
			std::uint64_t seed = 0;
			std::vector<Time> periods{5, 10, 20, 40};
			std::string priorities = "zero";

			unsigned repeat = 3;
		};

		Policy_kind policy_of(const Options& o)
		{
			auto p = parse_policy(o.policy);
			if (!p)
				throw Usage_error("unknown policy '" + o.policy + "'");
			return *p;
		}

		Eligibility_mode mode_of(const std::string& name)
		{
			auto m = parse_mode(name);
			if (!m)
				throw Usage_error("unknown mode '" + name + "'");
			return *m;
		}

		std::uint64_t scenario_cap(const Options& o)
		{
			if (o.max_scenarios)
				return o.max_scenarios;
			if (const char* env = std::getenv("SAG_MAX_SCENARIOS")) {
				try {
					std::size_t used = 0;
					const auto v = std::stoull(env, &used);
					if (used == std::string_view(env).size() && v > 0)
						return v;
				} catch (const std::exception&) {
				}
				throw Usage_error(std::string("SAG_MAX_SCENARIOS is not a positive integer: ") + env);
			}
			return oracle::Limits{}.max_scenarios;
		}

		Problem_instance load(const std::string& path)
		{
			return parse_instance(read_file(path));
		}

		// Writes to --out if given, else to `out`.
		void emit(const Options& o, std::ostream& out, const std::string& text)
		{
			if (o.out_path.empty()) {
				out << text;
				return;
			}
			std::ofstream f(o.out_path, std::ios::binary);
			if (!f)
				throw Usage_error("cannot write '" + o.out_path + "'");
			f << text;
		}

		std::string dump(const json& j)
		{
			return j.dump(2) + "\n";
		}

		int cmd_analyze(const Options& o, std::ostream& out)
		{
			const auto inst = load(o.inputs.at(0));
			Analysis_options opts;
			opts.mode = mode_of(o.mode);
			opts.exhaustive_misses = o.exhaustive_misses;
			opts.threads = o.threads;
			const auto a = generate(inst, policy_of(o), opts);
			if (o.format == "json")
				emit(o, out, dump(analysis_to_json(inst, a.result)));
			else
				emit(o, out, analysis_to_text(inst, a.result));
			return a.result.schedulable ? ok : unschedulable;
		}

		int cmd_simulate(const Options& o, std::ostream& out)
		{
			const auto inst = load(o.inputs.at(0));
			const auto scenario = parse_scenario(read_file(o.scenario_path), inst);
			const auto trace = oracle::simulate(inst, policy_of(o), scenario);
			if (o.format == "json")
				emit(o, out, dump(trace_to_json(inst, trace)));
			else
				emit(o, out, trace_to_text(inst, trace));
			return trace.has_miss() ? unschedulable : ok;
		}

		int cmd_brute_force(const Options& o, std::ostream& out)
		{
			const auto inst = load(o.inputs.at(0));
			oracle::Limits lim;
			lim.max_scenarios = scenario_cap(o);
			lim.threads = o.threads;
			lim.stop_at_first_failure = false;
			const auto r = oracle::enumerate(inst, policy_of(o), lim);
			emit(o, out, dump(oracle_to_json(inst, r)));
			return r.schedulable ? ok : unschedulable;
		}

		int cmd_gen(const Options& o, std::ostream& out)
		{
			Gen_spec spec;
			spec.n_tasks = o.tasks;
			spec.utilization = o.util;
			spec.jitter_ratio = o.rj;
			spec.variation_ratio = o.rc;
			spec.periods = o.periods;
			spec.seed = o.seed;
			auto scheme = parse_priority_scheme(o.priorities);
			if (!scheme)
				throw Usage_error("unknown priority scheme '" + o.priorities + "'");
			spec.priorities = *scheme;
			emit(o, out, write_instance(generate_instance(spec)));
			return ok;
		}

		int cmd_export_dot(const Options& o, std::ostream& out)
		{
			const auto inst = load(o.inputs.at(0));
			Analysis_options opts;
			opts.mode = mode_of(o.mode);
			opts.exhaustive_misses = o.exhaustive_misses;
			const auto a = generate(inst, policy_of(o), opts);
			emit(o, out, export_dot(a.graph, inst, &a.result));
			return a.result.schedulable ? ok : unschedulable;
		}

		// Runs f(0..n-1) on up to `jobs` threads; results are stored by index
		// so output order does not depend on scheduling.
		template <typename F>
		void parallel_for(std::size_t n, unsigned jobs, F f)
		{
			const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
			if (workers <= 1) {
				for (std::size_t i = 0; i < n; ++i)
					f(i);
				return;
			}
			std::vector<std::jthread> pool;
			for (unsigned w = 0; w < workers; ++w)
				pool.emplace_back([&, w] {
					for (std::size_t i = w; i < n; i += workers)
						f(i);
				});
		}

		struct Verdict {
			std::string me, se, oracle;
			bool bounds_match = true;
			bool agree = true;
			std::string error;
			int code = ok;
		};

		std::string verdict_word(bool schedulable)
		{
			return schedulable ? "schedulable" : "unschedulable";
		}

		Verdict compare_one(const std::string& path, Policy_kind kind, std::uint64_t cap)
		{
			Verdict v;
			try {
				const auto inst = load(path);
				Analysis_options me_opts;
				const auto me = generate(inst, kind, me_opts);
				v.me = verdict_word(me.result.schedulable);

				try {
					Analysis_options se_opts;
					se_opts.mode = Eligibility_mode::single;
					v.se = verdict_word(generate(inst, kind, se_opts).result.schedulable);
				} catch (const Analysis_stuck&) {
					v.se = "stuck";
				}

				try {
					oracle::Limits lim;
					lim.max_scenarios = cap;
					lim.stop_at_first_failure = false;
					const auto r = oracle::enumerate(inst, kind, lim);
					v.oracle = verdict_word(r.schedulable);
					v.agree = r.schedulable == me.result.schedulable;
					if (v.agree && r.schedulable)
						for (std::size_t j = 0; j < inst.num_jobs(); ++j)
							if (me.result.finish_bounds[j] != r.finish_range[j])
								v.bounds_match = false;
					v.agree = v.agree && v.bounds_match;
				} catch (const oracle::Scenario_cap_exceeded&) {
					v.oracle = "skipped";
				}
				v.code = v.agree ? ok : disagreement;
			} catch (const Analysis_stuck& e) {
				v.error = e.what();
				v.code = stuck;
			} catch (const std::exception& e) {
				v.error = e.what();
				v.code = usage_error;
			}
			return v;
		}

		int cmd_compare(const Options& o, std::ostream& out)
		{
			const Policy_kind kind = policy_of(o);
			const std::uint64_t cap = scenario_cap(o);
			std::vector<Verdict> verdicts(o.inputs.size());
			parallel_for(o.inputs.size(), o.jobs,
			             [&](std::size_t i) { verdicts[i] = compare_one(o.inputs[i], kind, cap); });

			int code = ok;
			json rows = json::array();
			std::ostringstream text;
			for (std::size_t i = 0; i < verdicts.size(); ++i) {
				const Verdict& v = verdicts[i];
				// a disagreement outranks every other outcome
				if (v.code == disagreement || (code != disagreement && v.code > code))
					code = v.code;
				json row = {{"instance", o.inputs[i]}, {"policy", to_string(kind)}};
				if (!v.error.empty()) {
					row["error"] = v.error;
					text << o.inputs[i] << ": error: " << v.error << '\n';
				} else {
					row["me"] = v.me;
					row["se"] = v.se;
					row["oracle"] = v.oracle;
					row["bounds_match"] = v.bounds_match;
					row["agree"] = v.agree;
					text << o.inputs[i] << " [" << to_string(kind) << "]  ME: " << v.me
					     << "  SE: " << v.se << "  oracle: " << v.oracle;
					if (!v.agree)
						text << "  EXACTNESS VIOLATION"
						     << (v.bounds_match ? "" : " (finish bounds differ)");
					text << '\n';
				}
				rows.push_back(row);
			}
			if (o.format == "json")
				emit(o, out, dump(o.inputs.size() == 1 ? rows[0] : rows));
			else
				emit(o, out, text.str());
			return code;
		}

		// One line of a bench spec:
		//   tasks=5 util=0.3 rj=0.3 rc=0.3 seeds=1-10 periods=50,100 policies=edf,cp modes=me,se priorities=zero repeat=5
		struct Bench_line {
			std::size_t line = 0;
			Gen_spec spec;
			std::uint64_t seed_lo = 1, seed_hi = 1;
			std::vector<Policy_kind> policies{Policy_kind::edf};
			std::vector<Eligibility_mode> modes{Eligibility_mode::multiple};
			std::optional<unsigned> repeat; // overrides --repeat
		};

		std::vector<std::string> split(const std::string& s, char sep)
		{
			std::vector<std::string> parts;
			std::stringstream ss(s);
			std::string item;
			while (std::getline(ss, item, sep))
				parts.push_back(item);
			return parts;
		}

		std::vector<Bench_line> parse_bench_spec(const std::string& text)
		{
			std::vector<Bench_line> lines;
			std::istringstream in(text);
			std::string raw;
			std::size_t number = 0;
			while (std::getline(in, raw)) {
				++number;
				if (auto hash = raw.find('#'); hash != std::string::npos)
					raw.erase(hash);
				std::istringstream words(raw);
				std::string word;
				Bench_line b;
				b.line = number;
				bool any = false;
				while (words >> word) {
					any = true;
					const auto eq = word.find('=');
					if (eq == std::string::npos)
						throw Parse_error(number, "expected key=value, got '" + word + "'");
					const std::string key = word.substr(0, eq), value = word.substr(eq + 1);
					try {
						if (key == "tasks") {
							b.spec.n_tasks = static_cast<std::uint32_t>(std::stoul(value));
						} else if (key == "util") {
							b.spec.utilization = std::stod(value);
						} else if (key == "rj") {
							b.spec.jitter_ratio = std::stod(value);
						} else if (key == "rc") {
							b.spec.variation_ratio = std::stod(value);
						} else if (key == "seeds") {
							const auto dash = value.find('-');
							b.seed_lo = std::stoull(value.substr(0, dash));
							b.seed_hi = dash == std::string::npos ? b.seed_lo : std::stoull(value.substr(dash + 1));
						} else if (key == "periods") {
							b.spec.periods.clear();
							for (const auto& p : split(value, ','))
								b.spec.periods.push_back(std::stoll(p));
						} else if (key == "policies") {
							b.policies.clear();
							for (const auto& p : split(value, ',')) {
								auto k = parse_policy(p);
								if (!k)
									throw Parse_error(number, "unknown policy '" + p + "'");
								b.policies.push_back(*k);
							}
						} else if (key == "modes") {
							b.modes.clear();
							for (const auto& m : split(value, ',')) {
								auto k = parse_mode(m);
								if (!k)
									throw Parse_error(number, "unknown mode '" + m + "'");
								b.modes.push_back(*k);
							}
						} else if (key == "repeat") {
							b.repeat = static_cast<unsigned>(std::stoul(value));
							if (*b.repeat == 0)
								throw Parse_error(number, "repeat must be positive");
						} else if (key == "priorities") {
							auto s = parse_priority_scheme(value);
							if (!s)
								throw Parse_error(number, "unknown priority scheme '" + value + "'");
							b.spec.priorities = *s;
						} else {
							throw Parse_error(number, "unknown key '" + key + "'");
						}
					} catch (const std::logic_error&) {
						// std::stoul and friends
						throw Parse_error(number, "bad value for '" + key + "'");
					}
				}
				if (!any)
					continue;
				if (b.seed_hi < b.seed_lo)
					throw Parse_error(number, "empty seed range");
				b.spec.validate();
				lines.push_back(std::move(b));
			}
			return lines;
		}

		struct Bench_row {
			std::string id;
			std::size_t jobs = 0;
			Policy_kind policy = Policy_kind::edf;
			Eligibility_mode mode = Eligibility_mode::multiple;
			std::size_t vertices = 0, arcs = 0;
			double wall_ms = 0;
			std::string verdict;
		};

		int cmd_bench(const Options& o, std::ostream& out)
		{
			const auto lines = parse_bench_spec(read_file(o.inputs.at(0)));

			struct Work {
				const Bench_line* line;
				std::uint64_t seed;
			};
			std::vector<Work> work;
			for (const auto& b : lines)
				for (std::uint64_t s = b.seed_lo; s <= b.seed_hi; ++s)
					work.push_back({&b, s});

			std::vector<std::vector<Bench_row>> rows(work.size());
			std::vector<std::string> errors(work.size());
			parallel_for(work.size(), o.jobs, [&](std::size_t i) {
				try {
					Gen_spec spec = work[i].line->spec;
					spec.seed = work[i].seed;
					const auto inst = generate_instance(spec);
					const std::string id = std::to_string(work[i].line->line) + "-" + std::to_string(spec.seed);
					for (Policy_kind kind : work[i].line->policies)
						for (Eligibility_mode mode : work[i].line->modes) {
							Bench_row r;
							r.id = id;
							r.jobs = inst.num_jobs();
							r.policy = kind;
							r.mode = mode;
							std::vector<double> times;
							try {
								for (unsigned k = 0; k < std::max(1u, work[i].line->repeat.value_or(o.repeat)); ++k) {
									Analysis_options opts;
									opts.mode = mode;
									const auto a = generate(inst, kind, opts);
									times.push_back(a.result.wall_ms);
									r.vertices = a.result.vertices_created;
									r.arcs = a.result.arcs_created;
									r.verdict = verdict_word(a.result.schedulable);
								}
								std::sort(times.begin(), times.end());
								r.wall_ms = times[times.size() / 2];
							} catch (const Analysis_stuck&) {
								r.verdict = "stuck";
							}
							rows[i].push_back(r);
						}
				} catch (const std::exception& e) {
					errors[i] = e.what();
				}
			});

			for (std::size_t i = 0; i < errors.size(); ++i)
				if (!errors[i].empty())
					throw Usage_error("spec line " + std::to_string(work[i].line->line) + ", seed "
					                  + std::to_string(work[i].seed) + ": " + errors[i]);

			std::ostringstream csv;
			csv << "instance,jobs,policy,mode,vertices,arcs,wall_ms,verdict\n";
			bool any_stuck = false;
			for (const auto& group : rows)
				for (const auto& r : group) {
					any_stuck = any_stuck || r.verdict == "stuck";
					csv << r.id << ',' << r.jobs << ',' << to_string(r.policy) << ',' << to_string(r.mode)
					    << ',' << r.vertices << ',' << r.arcs << ',' << r.wall_ms << ',' << r.verdict << '\n';
				}
			emit(o, out, csv.str());
			return any_stuck ? stuck : ok;
		}

		void add_policy(CLI::App* c, Options& o)
		{
			c->add_option("--policy", o.policy, "edf, fp-edf, p-fp-edf, cp or cw")
				->check(CLI::IsMember({"edf", "fp-edf", "p-fp-edf", "cp", "cw"}))
				->capture_default_str();
		}

		void add_mode(CLI::App* c, Options& o)
		{
			c->add_option("--mode", o.mode, "me (multiple eligibility) or se (single)")
				->check(CLI::IsMember({"me", "se"}))
				->capture_default_str();
		}

		void add_format(CLI::App* c, Options& o)
		{
			c->add_option("--format", o.format, "text or json")
				->check(CLI::IsMember({"text", "json"}))
				->capture_default_str();
		}

		void add_out(CLI::App* c, Options& o)
		{
			c->add_option("--out,-o", o.out_path, "write output to this file instead of stdout");
		}

		void add_cap(CLI::App* c, Options& o)
		{
			c->add_option("--max-scenarios", o.max_scenarios,
			              "oracle scenario cap (default: $SAG_MAX_SCENARIOS or 10000000)")
				->check(CLI::PositiveNumber);
		}

	} // namespace

	int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
	{
		Options o;
		CLI::App app{"Schedulability analysis of non-preemptive periodic tasks via schedule abstraction graphs"};
		app.name("sag");
		app.require_subcommand(1, 1);

		auto analyze = app.add_subcommand("analyze", "build the schedule graph and report the verdict");
		analyze->add_option("instance", o.inputs, "instance file")->required()->expected(1);
		add_policy(analyze, o);
		add_mode(analyze, o);
		add_format(analyze, o);
		add_out(analyze, o);
		analyze->add_flag("--exhaustive-misses", o.exhaustive_misses,
		                  "keep going after the first deadline miss and list them all");
		analyze->add_option("--threads", o.threads, "threads for expanding one level")
			->check(CLI::PositiveNumber);

		auto simulate = app.add_subcommand("simulate", "run the online scheduler on one concrete scenario");
		simulate->add_option("instance", o.inputs, "instance file")->required()->expected(1);
		simulate->add_option("--scenario", o.scenario_path, "scenario file (J <task> <index> r=<int> c=<int>)")
			->required();
		add_policy(simulate, o);
		add_format(simulate, o);
		add_out(simulate, o);

		auto brute = app.add_subcommand("brute-force", "simulate every execution scenario (JSON report)");
		brute->add_option("instance", o.inputs, "instance file")->required()->expected(1);
		add_policy(brute, o);
		add_cap(brute, o);
		add_out(brute, o);
		brute->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);

		auto gen = app.add_subcommand("gen", "generate a random instance");
		gen->add_option("--tasks", o.tasks, "number of tasks")->check(CLI::PositiveNumber)->capture_default_str();
		gen->add_option("--util", o.util, "target utilization in (0, 1]")->capture_default_str();
		gen->add_option("--rj", o.rj, "release jitter ratio in [0, 1]")->capture_default_str();
		gen->add_option("--rc", o.rc, "execution time variation ratio in [0, 1]")->capture_default_str();
		gen->add_option("--seed", o.seed, "random seed")->capture_default_str();
		gen->add_option("--periods", o.periods, "period choices")->delimiter(',')->capture_default_str();
		gen->add_option("--priorities", o.priorities, "zero, rm or random")
			->check(CLI::IsMember({"zero", "rm", "random"}))
			->capture_default_str();
		add_out(gen, o);

		auto compare = app.add_subcommand("compare", "ME vs SE vs exhaustive oracle");
		compare->add_option("instances", o.inputs, "instance files")->required();
		add_policy(compare, o);
		add_format(compare, o);
		add_out(compare, o);
		add_cap(compare, o);
		compare->add_option("--jobs", o.jobs, "instances processed in parallel")->check(CLI::PositiveNumber);

		auto dot = app.add_subcommand("export-dot", "write the schedule graph in Graphviz format");
		dot->add_option("instance", o.inputs, "instance file")->required()->expected(1);
		add_policy(dot, o);
		add_mode(dot, o);
		add_out(dot, o);
		dot->add_flag("--exhaustive-misses", o.exhaustive_misses, "do not stop at the first deadline miss");

		auto bench = app.add_subcommand("bench", "time generated instances, CSV output");
		bench->add_option("spec", o.inputs, "bench spec file")->required()->expected(1);
		bench->add_option("--jobs", o.jobs, "instances processed in parallel")->check(CLI::PositiveNumber);
		bench->add_option("--repeat", o.repeat, "timed runs per row; the median is reported")
			->check(CLI::PositiveNumber)
			->capture_default_str();
		add_out(bench, o);

		std::vector<std::string> argv_store{"sag"};
		argv_store.insert(argv_store.end(), args.begin(), args.end());
		std::vector<char*> argv;
		for (auto& s : argv_store)
			argv.push_back(s.data());

		try {
			app.parse(static_cast<int>(argv.size()), argv.data());
		} catch (const CLI::CallForHelp&) {
			out << app.help();
			return ok;
		} catch (const CLI::CallForAllHelp&) {
			out << app.help("", CLI::AppFormatMode::All);
			return ok;
		} catch (const CLI::ParseError& e) {
			err << "sag: " << e.what() << '\n';
			return usage_error;
		}

		try {
			if (analyze->parsed())
				return cmd_analyze(o, out);
			if (simulate->parsed())
				return cmd_simulate(o, out);
			if (brute->parsed())
				return cmd_brute_force(o, out);
			if (gen->parsed())
				return cmd_gen(o, out);
			if (compare->parsed())
				return cmd_compare(o, out);
			if (dot->parsed())
				return cmd_export_dot(o, out);
			if (bench->parsed())
				return cmd_bench(o, out);
		} catch (const Analysis_stuck& e) {
			err << "sag: analysis stuck: " << e.what() << '\n';
			return stuck;
		} catch (const oracle::Scenario_cap_exceeded& e) {
			err << "sag: " << e.what() << '\n';
			return usage_error;
		} catch (const std::exception& e) {
			err << "sag: " << e.what() << '\n';
			return usage_error;
		}
		return usage_error;
	}

} // namespace sag::cli
