#pragma once

#include <iosfwd>
#include <string_view>

#include "sparsekit/pipeline.hpp"

namespace sparsekit {

enum class ReportFormat { Csv, Json };

/// Accepts "csv" or "json" (case-insensitive); throws ParseError otherwise.
ReportFormat parse_report_format(std::string_view text);

/// Top vote count minus the runner-up count (the runner-up counts as 0
/// when only one label received votes).
int vote_margin(const ImagePrediction& pred);

/// CSV schema (fixed, 7 columns):
///   row_type,image_id,true_label,predicted,correct,vote_margin,value
/// One "image" row per test image, then one "class_accuracy" row per class
/// and a final "global_accuracy" row; accuracies use 6 decimal places.
void write_report_csv(const EvaluationReport& report, std::ostream& out);

/// JSON object with keys n_images, global_accuracy, per_class_accuracy and
/// images (id, true_label, predicted, correct, vote_margin per entry).
void write_report_json(const EvaluationReport& report, std::ostream& out);

void write_report(const EvaluationReport& report, ReportFormat format,
                  std::ostream& out);

}  // namespace sparsekit
