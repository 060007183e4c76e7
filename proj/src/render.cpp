#include "moran/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace moran {

namespace {

class Svg {
 public:
  Svg(double w, double h, int decimals) : decimals_(decimals) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
         << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
    out_ << "<rect x=\"0\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(h) << "\" fill=\"white\"/>\n";
  }

  std::string num(double v) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals_, v);
    return buf;
  }

  void rect(double x, double y, double w, double h, const std::string& attrs) {
    out_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
         << "\" " << attrs << "/>\n";
  }

  void text(double x, double y, const std::string& s) {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"monospace\" font-size=\"10\">" << s
         << "</text>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  int decimals_;
  std::ostringstream out_;
};

const char* level_color(std::size_t k) {
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return palette[k % 10];
}

// Words of Gamma_k for k = 0..depth, level by level.
std::vector<std::vector<Word>> levels(const MoranConstruction& mc, std::size_t depth, std::size_t budget) {
  std::vector<std::vector<Word>> out{{Word(mc.alphabet())}};
  std::size_t total = 1;
  for (std::size_t k = 1; k <= depth; ++k) {
    std::vector<Word> next;
    for (const Word& w : allowed_words(mc.subshift(), k, budget)) next.push_back(w);
    total += next.size();
    if (total > budget) throw BudgetError("render exceeded node budget at level " + std::to_string(k));
    out.push_back(std::move(next));
  }
  return out;
}

constexpr double kMargin = 10;
constexpr double kLabel = 40;

}  // namespace

std::string render_svg(const MoranConstruction& mc, std::size_t depth, const RenderStyle& style, std::size_t budget) {
  const auto words = levels(mc, depth, budget);
  const Box& w = mc.seed();
  if (mc.dimension() == 1) {
    const long double lo = to_real(w.lo(0));
    const long double span = to_real(w.hi(0) - w.lo(0));
    auto px = [&](const Rational& x) { return kMargin + kLabel + static_cast<double>((to_real(x) - lo) / span) * style.width; };
    const double rows = static_cast<double>(depth + 2);
    Svg svg(style.width + 2 * kMargin + kLabel, rows * (style.row_height + style.row_gap) + 2 * kMargin,
            style.decimals);
    const double bottom = kMargin + rows * (style.row_height + style.row_gap);
    if (style.gaps && depth >= 1) {
      std::vector<Interval> first;
      for (const Word& v : words[1]) {
        const Box b = piece(mc, v);
        first.push_back({b.lo(0), b.hi(0)});
      }
      for (const auto& g : GeoSet(first).gaps()) {
        svg.rect(px(g.lo), kMargin, px(g.hi) - px(g.lo), bottom - kMargin, "fill=\"#fde0dd\" class=\"gap\"");
      }
    }
    std::vector<Interval> finest;
    for (std::size_t k = 0; k <= depth; ++k) {
      const double y = kMargin + static_cast<double>(k) * (style.row_height + style.row_gap);
      svg.text(kMargin, y + style.row_height - 2, "n=" + std::to_string(k));
      for (const Word& v : words[k]) {
        const Box b = piece(mc, v);
        svg.rect(px(b.lo(0)), y, px(b.hi(0)) - px(b.lo(0)), style.row_height,
                 std::string("fill=\"") + level_color(k) + "\" class=\"piece\"");
        if (k == depth) finest.push_back({b.lo(0), b.hi(0)});
      }
    }
    // Union strip: merged final-level pieces, in seed coordinates.
    const double y = kMargin + static_cast<double>(depth + 1) * (style.row_height + style.row_gap);
    svg.text(kMargin, y + style.row_height - 2, "E");
    std::sort(finest.begin(), finest.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (auto& p : finest) {
      if (!merged.empty() && p.lo <= merged.back().hi) {
        if (p.hi > merged.back().hi) merged.back().hi = p.hi;
      } else {
        merged.push_back(p);
      }
    }
    for (const auto& p : merged) {
      svg.rect(px(p.lo), y, px(p.hi) - px(p.lo), style.row_height, "fill=\"black\" class=\"union\"");
    }
    return svg.finish();
  }

  const long double x0 = to_real(w.lo(0)), y0 = to_real(w.lo(1));
  const long double sx = to_real(w.hi(0) - w.lo(0)), sy = to_real(w.hi(1) - w.lo(1));
  const double scale = style.width / static_cast<double>(std::max(sx, sy));
  const double height = static_cast<double>(sy) * scale;
  Svg svg(style.width + 2 * kMargin, height + 2 * kMargin, style.decimals);
  for (std::size_t k = 0; k <= depth; ++k) {
    for (const Word& v : words[k]) {
      const Box b = piece(mc, v);
      const double bx = kMargin + static_cast<double>(to_real(b.lo(0)) - x0) * scale;
      // SVG y grows downward.
      const double by = kMargin + height - static_cast<double>(to_real(b.hi(1)) - y0) * scale;
      const double bw = static_cast<double>(to_real(b.hi(0) - b.lo(0))) * scale;
      const double bh = static_cast<double>(to_real(b.hi(1) - b.lo(1))) * scale;
      const std::string fill = k == depth ? std::string("fill=\"black\"") : std::string("fill=\"none\"");
      svg.rect(bx, by, bw, bh, fill + " stroke=\"" + level_color(k) + "\" stroke-width=\"0.5\" class=\"piece\"");
    }
  }
  return svg.finish();
}

std::string render_strips(const std::vector<std::pair<std::string, GeoSet>>& rows, const RenderStyle& style) {
  const double label = 4 * kLabel;
  Svg svg(style.width + 2 * kMargin + label,
          static_cast<double>(rows.size()) * (style.row_height + style.row_gap) + 2 * kMargin, style.decimals);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double y = kMargin + static_cast<double>(k) * (style.row_height + style.row_gap);
    svg.text(kMargin, y + style.row_height - 2, rows[k].first);
    svg.rect(kMargin + label, y + style.row_height / 2, style.width, 0.5, "fill=\"#cccccc\"");
    for (const auto& p : rows[k].second.intervals()) {
      const double a = kMargin + label + static_cast<double>(to_real(p.lo)) * style.width;
      const double b = kMargin + label + static_cast<double>(to_real(p.hi)) * style.width;
      svg.rect(a, y, std::max(b - a, 0.5), style.row_height, "fill=\"black\" class=\"piece\"");
    }
  }
  return svg.finish();
}

}  // namespace moran
