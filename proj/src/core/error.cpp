#include "dashsnap/core/error.hpp"

#include <array>
#include <utility>

namespace dashsnap {

namespace {

constexpr std::array<std::pair<Code, std::string_view>, 52> kNames{{
    {Code::Syntax, "SYNTAX"},
    {Code::UnknownKey, "UNKNOWN_KEY"},
    {Code::MissingField, "MISSING_FIELD"},
    {Code::TypeMismatch, "TYPE_MISMATCH"},
    {Code::InvalidValue, "INVALID_VALUE"},
    {Code::UnsupportedVersion, "UNSUPPORTED_VERSION"},
    {Code::NoMeasuresOrDimensions, "NO_MEASURES_OR_DIMENSIONS"},
    {Code::DuplicatePanelId, "DUPLICATE_PANEL_ID"},
    {Code::MeasureShape, "MEASURE_SHAPE"},
    {Code::UnknownMeasureRef, "UNKNOWN_MEASURE_REF"},
    {Code::CyclicMeasureRef, "CYCLIC_MEASURE_REF"},
    {Code::ExpressionSyntax, "EXPRESSION_SYNTAX"},
    {Code::UnknownColumn, "UNKNOWN_COLUMN"},
    {Code::TemporalFieldRequired, "TEMPORAL_FIELD_REQUIRED"},
    {Code::FilterTypeMismatch, "FILTER_TYPE_MISMATCH"},
    {Code::DurationInvalid, "DURATION_INVALID"},
    {Code::TimeFrameInvalid, "TIME_FRAME_INVALID"},
    {Code::EncodingFieldUnknown, "ENCODING_FIELD_UNKNOWN"},
    {Code::AppearanceRequiresVisual, "APPEARANCE_REQUIRES_VISUAL"},
    {Code::AnnotationUnresolved, "ANNOTATION_UNRESOLVED"},
    {Code::InteractiveFilterInvalid, "INTERACTIVE_FILTER_INVALID"},
    {Code::NoComponents, "NO_COMPONENTS"},
    {Code::DuplicateComponentId, "DUPLICATE_COMPONENT_ID"},
    {Code::CurationInvalid, "CURATION_INVALID"},
    {Code::RecurrenceHorizonInvalid, "RECURRENCE_HORIZON_INVALID"},
    {Code::CompletenessInvalid, "COMPLETENESS_INVALID"},
    {Code::UnknownDataSource, "UNKNOWN_DATA_SOURCE"},
    {Code::CsvRagged, "CSV_RAGGED"},
    {Code::CsvDuplicateHeader, "CSV_DUPLICATE_HEADER"},
    {Code::CsvCellType, "CSV_CELL_TYPE"},
    {Code::GranularityTooCoarse, "GRANULARITY_TOO_COARSE"},
    {Code::UnknownTemplate, "UNKNOWN_TEMPLATE"},
    {Code::TemplateInapplicable, "TEMPLATE_INAPPLICABLE"},
    {Code::ParamMissing, "PARAM_MISSING"},
    {Code::ParamType, "PARAM_TYPE"},
    {Code::ParamCategoryGap, "PARAM_CATEGORY_GAP"},
    {Code::ParamUnknownCategory, "PARAM_UNKNOWN_CATEGORY"},
    {Code::UnknownToken, "UNKNOWN_TOKEN"},
    {Code::UnsupportedMark, "UNSUPPORTED_MARK"},
    {Code::NoTimeFrame, "NO_TIME_FRAME"},
    {Code::RecurrenceExpired, "RECURRENCE_EXPIRED"},
    {Code::NotAutoRecur, "NOT_AUTO_RECUR"},
    {Code::UnknownSnapshot, "UNKNOWN_SNAPSHOT"},
    {Code::UnknownChannel, "UNKNOWN_CHANNEL"},
    {Code::UnknownThread, "UNKNOWN_THREAD"},
    {Code::UnknownMessage, "UNKNOWN_MESSAGE"},
    {Code::UndeclaredFilter, "UNDECLARED_FILTER"},
    {Code::FilterValueOutOfRange, "FILTER_VALUE_OUT_OF_RANGE"},
    {Code::StoreCorrupt, "STORE_CORRUPT"},
    {Code::StoreVersion, "STORE_VERSION"},
    {Code::NotFound, "NOT_FOUND"},
    {Code::Io, "IO"},
}};

}  // namespace

std::string_view code_name(Code code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "UNKNOWN";
}

std::optional<Code> code_from_name(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

std::string to_string(const SourceSpan& span) {
  return std::to_string(span.line) + ":" + std::to_string(span.column);
}

Error::Error(Code code, const std::string& message,
             std::optional<SourceSpan> span)
    : std::runtime_error(std::string(code_name(code)) + ": " + message),
      code_(code),
      span_(span) {}

}  // namespace dashsnap
