#include "svarkit/plots.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "svarkit/csv.hpp"
#include "svarkit/errors.hpp"

namespace svarkit::plots {

namespace {

std::string fmt(double x) { return tscore::format_double(x); }

struct Panel {
  double x0, y0, w, h;  // pixel box
};

void draw_series(std::ostream& out, const Panel& p, const std::vector<double>& y,
                 double ymin, double ymax, const char* color, double width,
                 const char* dash) {
  const int n = static_cast<int>(y.size());
  std::ostringstream pts;
  for (int i = 0; i < n; ++i) {
    const double px = p.x0 + p.w * i / std::max(1, n - 1);
    const double py = p.y0 + p.h * (1.0 - (y[i] - ymin) / (ymax - ymin));
    pts << (i ? " " : "") << px << "," << py;
  }
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
      << "\"";
  if (dash) out << " stroke-dasharray=\"" << dash << "\"";
  out << " points=\"" << pts.str() << "\"/>\n";
}

}  // namespace

void write_irf_csv(const std::string& path, const dynamics::ImpulseSet& irf,
                   int response, const std::vector<std::string>& shocks) {
  tscore::CsvTable t;
  t.header.push_back("horizon");
  const int K = static_cast<int>(irf.phis[0].cols());
  for (int j = 0; j < K; ++j) {
    const std::string& s = shocks[j];
    t.header.push_back(s);
    if (irf.has_bands) {
      t.header.push_back(s + "_lower");
      t.header.push_back(s + "_upper");
    }
  }
  for (int s = 0; s <= irf.horizon; ++s) {
    std::vector<std::string> row;
    row.push_back(std::to_string(s));
    for (int j = 0; j < K; ++j) {
      row.push_back(fmt(irf.phis[s](response, j)));
      if (irf.has_bands) {
        row.push_back(fmt(irf.lower[s](response, j)));
        row.push_back(fmt(irf.upper[s](response, j)));
      }
    }
    t.rows.push_back(std::move(row));
  }
  tscore::write_csv(path, t);
}

void write_fevd_csv(const std::string& path, const dynamics::FevdTable& table) {
  tscore::CsvTable t;
  t.header.push_back("variable");
  for (const auto& c : table.cols) t.header.push_back(c);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    std::vector<std::string> row;
    row.push_back(table.rows[i]);
    for (int j = 0; j < table.shares.cols(); ++j) {
      row.push_back(fmt(table.shares(static_cast<int>(i), j)));
    }
    t.rows.push_back(std::move(row));
  }
  tscore::write_csv(path, t);
}

void write_irf_svg(const std::string& path, const dynamics::ImpulseSet& irf,
                   int response, const std::string& response_name,
                   const std::vector<std::string>& shocks) {
  const int K = static_cast<int>(irf.phis[0].cols());
  const int cols = 2;
  const int rows = (K + 1) / 2;
  const double pw = 300, ph = 200, margin = 45, title = 28;
  const double W = cols * (pw + margin) + margin;
  const double H = rows * (ph + margin + title) + margin;

  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<text x=\"" << margin << "\" y=\"18\" font-size=\"15\">Responses of "
      << response_name << "</text>\n";

  for (int j = 0; j < K; ++j) {
    Panel p;
    p.w = pw;
    p.h = ph;
    p.x0 = margin + (j % cols) * (pw + margin);
    p.y0 = title + margin / 2.0 + (j / cols) * (ph + margin + title);

    std::vector<double> point, lo, hi;
    for (int s = 0; s <= irf.horizon; ++s) {
      point.push_back(irf.phis[s](response, j));
      if (irf.has_bands) {
        lo.push_back(irf.lower[s](response, j));
        hi.push_back(irf.upper[s](response, j));
      }
    }
    double ymin = *std::min_element(point.begin(), point.end());
    double ymax = *std::max_element(point.begin(), point.end());
    if (irf.has_bands) {
      ymin = std::min(ymin, *std::min_element(lo.begin(), lo.end()));
      ymax = std::max(ymax, *std::max_element(hi.begin(), hi.end()));
    }
    ymin = std::min(ymin, 0.0);
    ymax = std::max(ymax, 0.0);
    if (ymax - ymin < 1e-12) {
      ymax += 1e-12;
      ymin -= 1e-12;
    }
    const double pad = 0.08 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    out << "<rect x=\"" << p.x0 << "\" y=\"" << p.y0 << "\" width=\"" << p.w
        << "\" height=\"" << p.h << "\" fill=\"white\" stroke=\"#888\"/>\n";
    // zero line
    const double zy = p.y0 + p.h * (1.0 - (0.0 - ymin) / (ymax - ymin));
    out << "<line x1=\"" << p.x0 << "\" y1=\"" << zy << "\" x2=\"" << p.x0 + p.w
        << "\" y2=\"" << zy << "\" stroke=\"#bbb\"/>\n";
    if (irf.has_bands) {
      draw_series(out, p, lo, ymin, ymax, "#c00", 1.0, "5,4");
      draw_series(out, p, hi, ymin, ymax, "#c00", 1.0, "5,4");
    }
    draw_series(out, p, point, ymin, ymax, "#036", 1.8, nullptr);
    out << "<text x=\"" << p.x0 << "\" y=\"" << p.y0 - 6 << "\">" << response_name
        << " to " << shocks[j] << "</text>\n";
    out << "<text x=\"" << p.x0 - 4 << "\" y=\"" << p.y0 + 10
        << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(ymax) << "</text>\n";
    out << "<text x=\"" << p.x0 - 4 << "\" y=\"" << p.y0 + p.h
        << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(ymin) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace svarkit::plots
