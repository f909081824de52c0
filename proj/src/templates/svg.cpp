#include "dashsnap/templates/svg.hpp"

#include <cmath>
#include <cstdio>

namespace dashsnap::templates {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string coord(double v) {
  double r = std::round(v * 100.0) / 100.0;
  if (r == 0) r = 0;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", r);
  std::string s(buf);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

SvgWriter::SvgWriter(double width, double height) {
  out_ = "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + coord(width) + "\" height=\"" +
         coord(height) + "\" viewBox=\"0 0 " + coord(width) + " " + coord(height) + "\">\n";
}

void SvgWriter::write_attrs(Attrs attrs) {
  for (const auto& [k, v] : attrs) {
    out_ += ' ';
    out_ += k;
    out_ += "=\"";
    out_ += xml_escape(v);
    out_ += '"';
  }
}

void SvgWriter::open(std::string_view tag, Attrs attrs) {
  out_.append(static_cast<std::size_t>(depth_) * 2, ' ');
  out_ += '<';
  out_ += tag;
  write_attrs(attrs);
  out_ += ">\n";
  ++depth_;
}

void SvgWriter::close(std::string_view tag) {
  --depth_;
  out_.append(static_cast<std::size_t>(depth_) * 2, ' ');
  out_ += "</";
  out_ += tag;
  out_ += ">\n";
}

void SvgWriter::element(std::string_view tag, Attrs attrs) {
  out_.append(static_cast<std::size_t>(depth_) * 2, ' ');
  out_ += '<';
  out_ += tag;
  write_attrs(attrs);
  out_ += "/>\n";
}

void SvgWriter::text(Attrs attrs, std::string_view content) {
  out_.append(static_cast<std::size_t>(depth_) * 2, ' ');
  out_ += "<text";
  write_attrs(attrs);
  out_ += '>';
  out_ += xml_escape(content);
  out_ += "</text>\n";
}

void SvgWriter::title(std::string_view content) {
  out_.append(static_cast<std::size_t>(depth_) * 2, ' ');
  out_ += "<title>" + xml_escape(content) + "</title>\n";
}

std::string SvgWriter::finish() {
  while (depth_ > 1) close("g");
  return out_ + "</svg>\n";
}

}  // namespace dashsnap::templates
