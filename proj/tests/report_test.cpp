#include "sparsekit/report.hpp"

#include <doctest.h>
#include <sstream>

#include <json.hpp>

using namespace sparsekit;

namespace {

EvaluationReport sample_report() {
  EvaluationReport report;
  report.n_images = 2;
  report.global_accuracy = 0.5;
  report.per_class_accuracy = {{"m-001", 1.0}, {"w-002", 0.0}};

  ImagePrediction first;
  first.id = "m-001-08";
  first.true_label = "m-001";
  first.predicted = "m-001";
  first.votes = {{"m-001", 7}, {"w-002", 2}};
  ImagePrediction second;
  second.id = "w-002-08";
  second.true_label = "w-002";
  second.predicted = "m-001";
  second.votes = {{"m-001", 5}, {"w-002", 4}};
  report.predictions = {first, second};
  return report;
}

}  // namespace

TEST_CASE("vote_margin is top minus runner-up") {
  ImagePrediction pred;
  pred.votes = {{"a", 5}, {"b", 2}, {"c", 1}};
  CHECK(vote_margin(pred) == 3);
  pred.votes = {{"a", 4}};
  CHECK(vote_margin(pred) == 4);
  pred.votes = {{"a", 3}, {"b", 3}};
  CHECK(vote_margin(pred) == 0);
}

TEST_CASE("csv report schema is stable") {
  std::ostringstream out;
  write_report_csv(sample_report(), out);
  CHECK(out.str() ==
        "row_type,image_id,true_label,predicted,correct,vote_margin,value\n"
        "image,m-001-08,m-001,m-001,1,5,\n"
        "image,w-002-08,w-002,m-001,0,1,\n"
        "class_accuracy,,m-001,,,,1.000000\n"
        "class_accuracy,,w-002,,,,0.000000\n"
        "global_accuracy,,,,,,0.500000\n");
}

TEST_CASE("json report carries the same content") {
  std::ostringstream out;
  write_report_json(sample_report(), out);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["n_images"] == 2);
  CHECK(doc["global_accuracy"] == 0.5);
  CHECK(doc["per_class_accuracy"]["m-001"] == 1.0);
  CHECK(doc["per_class_accuracy"]["w-002"] == 0.0);
  REQUIRE(doc["images"].size() == 2);
  CHECK(doc["images"][0]["id"] == "m-001-08");
  CHECK(doc["images"][0]["correct"] == true);
  CHECK(doc["images"][0]["vote_margin"] == 5);
  CHECK(doc["images"][1]["correct"] == false);

  // Writing twice yields identical bytes.
  std::ostringstream again;
  write_report_json(sample_report(), again);
  CHECK(out.str() == again.str());
}

TEST_CASE("parse_report_format") {
  CHECK(parse_report_format("csv") == ReportFormat::Csv);
  CHECK(parse_report_format("JSON") == ReportFormat::Json);
  CHECK_THROWS_AS(parse_report_format("xml"), ParseError);
}
