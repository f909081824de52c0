#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>

namespace dashsnap::templates {

std::string xml_escape(std::string_view s);

/// Coordinates print with at most two decimals so output is byte-stable.
std::string coord(double v);

/// Minimal SVG 1.1 writer: elements are appended in call order, attributes
/// in the order given.
class SvgWriter {
 public:
  using Attrs = std::initializer_list<std::pair<std::string_view, std::string>>;

  SvgWriter(double width, double height);

  void open(std::string_view tag, Attrs attrs);
  void close(std::string_view tag);
  void element(std::string_view tag, Attrs attrs);
  void text(Attrs attrs, std::string_view content);
  void title(std::string_view content);

  /// Closes the root element and returns the document.
  std::string finish();

 private:
  void write_attrs(Attrs attrs);
  std::string out_;
  int depth_ = 1;
};

}  // namespace dashsnap::templates
