#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dashsnap {

/// Machine-readable codes shared by validation reports, parse errors, and
/// every exception the engine throws. The service layer maps each code to
/// exactly one HTTP status.
enum class Code {
  // parsing / surface form
  Syntax,
  UnknownKey,
  MissingField,
  TypeMismatch,
  InvalidValue,
  UnsupportedVersion,
  // component / snapshot invariants
  NoMeasuresOrDimensions,
  DuplicatePanelId,
  MeasureShape,
  UnknownMeasureRef,
  CyclicMeasureRef,
  ExpressionSyntax,
  UnknownColumn,
  TemporalFieldRequired,
  FilterTypeMismatch,
  DurationInvalid,
  TimeFrameInvalid,
  EncodingFieldUnknown,
  AppearanceRequiresVisual,
  AnnotationUnresolved,
  InteractiveFilterInvalid,
  NoComponents,
  DuplicateComponentId,
  CurationInvalid,
  RecurrenceHorizonInvalid,
  CompletenessInvalid,
  UnknownDataSource,
  // data engine
  CsvRagged,
  CsvDuplicateHeader,
  CsvCellType,
  GranularityTooCoarse,
  // templates
  UnknownTemplate,
  TemplateInapplicable,
  ParamMissing,
  ParamType,
  ParamCategoryGap,
  ParamUnknownCategory,
  UnknownToken,
  UnsupportedMark,
  // lifecycle
  NoTimeFrame,
  RecurrenceExpired,
  NotAutoRecur,
  UnknownSnapshot,
  // platform
  UnknownChannel,
  UnknownThread,
  UnknownMessage,
  UndeclaredFilter,
  FilterValueOutOfRange,
  StoreCorrupt,
  StoreVersion,
  // generic
  NotFound,
  Io,
};

std::string_view code_name(Code code);
std::optional<Code> code_from_name(std::string_view name);

/// 1-based line/column position inside a source document.
struct SourceSpan {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

std::string to_string(const SourceSpan& span);

class Error : public std::runtime_error {
 public:
  Error(Code code, const std::string& message,
        std::optional<SourceSpan> span = std::nullopt);

  Code code() const noexcept { return code_; }
  const std::optional<SourceSpan>& span() const noexcept { return span_; }

 private:
  Code code_;
  std::optional<SourceSpan> span_;
};

}  // namespace dashsnap
