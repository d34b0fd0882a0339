#include "doctest.h"

#include <regex>

#include "sag/dot.hpp"
#include "sag/instance_io.hpp"
#include "sag/report.hpp"

using namespace sag;
using nlohmann::json;

namespace {

	Problem_instance fixture(const std::string& name)
	{
		return parse_instance(read_file(std::string(SAG_TEST_DATA_DIR) + "/" + name));
	}

	std::size_t count(const std::string& text, const std::regex& re)
	{
		return static_cast<std::size_t>(
			std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
	}

	void check_analysis_schema(const json& j)
	{
		REQUIRE(j.is_object());
		CHECK(j.at("schedulable").is_boolean());
		CHECK(j.at("schedulable").get<bool>() == !j.contains("witness"));
		for (const auto& b : j.at("bounds")) {
			CHECK(b.at("task").is_number_unsigned());
			CHECK(b.at("job").is_number_unsigned());
			CHECK(b.at("eft_min").is_number_integer());
			CHECK(b.at("lft_max").is_number_integer());
			CHECK(b["eft_min"].get<Time>() <= b["lft_max"].get<Time>());
		}
		const auto& stats = j.at("stats");
		CHECK(stats.at("wall_ms").is_number());
		for (const auto& l : stats.at("levels")) {
			CHECK(l.at("vertices").is_number_unsigned());
			CHECK(l.at("arcs").is_number_unsigned());
		}
		if (j.contains("witness"))
			for (const char* key : {"vertex", "task", "job", "lft", "deadline"})
				CHECK(j["witness"].at(key).is_number_integer());
	}

} // namespace

TEST_CASE("[report] Analysis JSON")
{
	auto inst = fixture("edf_walkthrough.sag");
	auto a = generate(inst, Policy_kind::edf);
	auto j = analysis_to_json(inst, a.result);
	check_analysis_schema(j);
	CHECK(j["schedulable"] == true);
	REQUIRE(j["bounds"].size() == 4);
	CHECK(j["bounds"][2] == json{{"task", 2}, {"job", 2}, {"eft_min", 6}, {"lft_max", 8}});
	REQUIRE(j["stats"]["levels"].size() == 5);
	CHECK(j["stats"]["levels"][2] == json{{"vertices", 2}, {"arcs", 2}});
	CHECK(j["stats"]["levels"][4] == json{{"vertices", 1}, {"arcs", 2}});

	auto multi = fixture("multi_eligibility.sag");
	Analysis_options se;
	se.mode = Eligibility_mode::single;
	auto miss = analysis_to_json(multi, generate(multi, Policy_kind::p_fp_edf, se).result);
	check_analysis_schema(miss);
	CHECK(miss["witness"]["task"] == 3);
	CHECK(miss["witness"]["job"] == 1);
	CHECK(miss["witness"]["lft"] == 18);
	CHECK(miss["witness"]["deadline"] == 14);
}

TEST_CASE("[report] Text summary")
{
	auto inst = fixture("anomaly.sag");
	auto text = analysis_to_text(inst, generate(inst, Policy_kind::edf).result);
	CHECK(text.find("NOT schedulable") != std::string::npos);
	CHECK(text.find("J3,2") != std::string::npos);
	CHECK(text.find("(partial)") != std::string::npos);
}

TEST_CASE("[report] Oracle and trace JSON")
{
	auto inst = fixture("multi_eligibility.sag");
	oracle::Limits all;
	all.stop_at_first_failure = false;
	auto j = oracle_to_json(inst, oracle::enumerate(inst, Policy_kind::p_fp_edf, all));
	CHECK(j["schedulable"] == true);
	CHECK(j["scenarios_checked"] == 8);
	CHECK(j["failing_scenarios"] == 0);
	CHECK_FALSE(j.contains("failing"));
	REQUIRE(j["bounds"].size() == 4);
	CHECK(j["bounds"][0] == json{{"task", 1}, {"job", 1}, {"finish_min", 12}, {"finish_max", 12}});

	auto bad = fixture("anomaly.sag");
	auto k = oracle_to_json(bad, oracle::enumerate(bad, Policy_kind::edf));
	CHECK(k["schedulable"] == false);
	REQUIRE(k["failing"].size() == bad.num_jobs());
	CHECK(k["failing"][0] == json{{"task", 1}, {"job", 1}, {"r", 2}, {"c", 6}});

	auto t = trace_to_json(bad, oracle::simulate(bad, Policy_kind::edf, worst_case_scenario(bad)));
	CHECK(t["schedulable"] == true);
	CHECK(t["dispatches"].size() == bad.num_jobs());
	CHECK(t["misses"].empty());
}

TEST_CASE("[report] DOT export")
{
	auto inst = fixture("edf_walkthrough.sag");
	auto a = generate(inst, Policy_kind::edf);
	auto dot = export_dot(a.graph, inst, &a.result);
	CHECK(dot.rfind("digraph", 0) == 0);
	CHECK(dot.find("label=\"v4: [5,7]\"") != std::string::npos);
	CHECK(dot.find("label=\"v7: [6,8]\"") != std::string::npos);
	CHECK(count(dot, std::regex(R"(\[label="v\d+: )")) == a.graph.live_vertices());
	CHECK(count(dot, std::regex(" -> ")) == a.graph.live_arcs());
	CHECK(dot.find("v5 [") == std::string::npos); // merged away
	CHECK(dot.find("red") == std::string::npos);
	CHECK(dot == export_dot(generate(inst, Policy_kind::edf).graph, inst, &a.result));

	auto multi = fixture("multi_eligibility.sag");
	auto m = generate(multi, Policy_kind::p_fp_edf);
	auto mdot = export_dot(m.graph, multi, &m.result);
	CHECK(count(mdot, std::regex(R"(v1 -> v\d+ \[label="J3,1")")) == 2);

	Analysis_options se;
	se.mode = Eligibility_mode::single;
	auto s = generate(multi, Policy_kind::p_fp_edf, se);
	auto sdot = export_dot(s.graph, multi, &s.result);
	const std::string witness = "v" + std::to_string(s.result.witness->vertex) + " [label=\"v"
	                          + std::to_string(s.result.witness->vertex) + ": [18,18]\", color=red";
	CHECK(sdot.find(witness) != std::string::npos);

	auto empty = parse_instance("H 5\ntask 1 T=10 rmin=6 rmax=6 cmin=1 cmax=1 d=10 p=0\n");
	auto e = generate(empty, Policy_kind::edf);
	auto edot = export_dot(e.graph, empty, &e.result);
	CHECK(count(edot, std::regex(R"(\[label="v\d+: )")) == 1);
	CHECK(count(edot, std::regex(" -> ")) == 0);
}
