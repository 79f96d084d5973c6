#include "sparsekit/report.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

namespace sparsekit {

ReportFormat parse_report_format(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  if (lowered == "csv") return ReportFormat::Csv;
  if (lowered == "json") return ReportFormat::Json;
  throw ParseError("unknown report format '" + std::string(text) +
                   "' (expected csv or json)");
}

int vote_margin(const ImagePrediction& pred) {
  int top = 0;
  int runner_up = 0;
  for (const auto& [label, count] : pred.votes) {
    if (count > top) {
      runner_up = top;
      top = count;
    } else if (count > runner_up) {
      runner_up = count;
    }
  }
  return top - runner_up;
}

namespace {

std::string format_accuracy(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

}  // namespace

void write_report_csv(const EvaluationReport& report, std::ostream& out) {
  out << "row_type,image_id,true_label,predicted,correct,vote_margin,value\n";
  for (const ImagePrediction& pred : report.predictions) {
    const std::string truth = pred.true_label.value_or("");
    const bool correct = pred.true_label && *pred.true_label == pred.predicted;
    out << "image," << pred.id << ',' << truth << ',' << pred.predicted << ','
        << (correct ? 1 : 0) << ',' << vote_margin(pred) << ",\n";
  }
  for (const auto& [label, accuracy] : report.per_class_accuracy) {
    out << "class_accuracy,," << label << ",,,," << format_accuracy(accuracy)
        << "\n";
  }
  out << "global_accuracy,,,,,," << format_accuracy(report.global_accuracy)
      << "\n";
}

void write_report_json(const EvaluationReport& report, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["n_images"] = report.n_images;
  doc["global_accuracy"] = report.global_accuracy;
  nlohmann::ordered_json per_class = nlohmann::ordered_json::object();
  for (const auto& [label, accuracy] : report.per_class_accuracy) {
    per_class[label] = accuracy;
  }
  doc["per_class_accuracy"] = std::move(per_class);
  nlohmann::ordered_json images = nlohmann::ordered_json::array();
  for (const ImagePrediction& pred : report.predictions) {
    nlohmann::ordered_json row;
    row["id"] = pred.id;
    row["true_label"] = pred.true_label.value_or("");
    row["predicted"] = pred.predicted;
    row["correct"] = pred.true_label && *pred.true_label == pred.predicted;
    row["vote_margin"] = vote_margin(pred);
    images.push_back(std::move(row));
  }
  doc["images"] = std::move(images);
  out << doc.dump(2) << "\n";
}

void write_report(const EvaluationReport& report, ReportFormat format,
                  std::ostream& out) {
  if (format == ReportFormat::Csv) {
    write_report_csv(report, out);
  } else {
    write_report_json(report, out);
  }
}

}  // namespace sparsekit
