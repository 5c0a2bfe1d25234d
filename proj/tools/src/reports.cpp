#include "reports.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace attrbeam::cli {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write output file: " + path);
  }
  return out;
}

std::string html_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Diverging shade anchored at zero: white for 0, saturated red/blue at the
// per-instance maximum magnitude.
std::string heat_color(double value, double max_abs) {
  double t = max_abs > 0.0 ? std::fabs(value) / max_abs : 0.0;
  t = std::min(1.0, std::max(0.0, t));
  const double full_r[3] = {214.0, 39.0, 40.0};
  const double full_b[3] = {49.0, 104.0, 223.0};
  const double* full = value >= 0.0 ? full_r : full_b;
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "rgb(%d,%d,%d)",
                static_cast<int>(std::lround(255.0 + (full[0] - 255.0) * t)),
                static_cast<int>(std::lround(255.0 + (full[1] - 255.0) * t)),
                static_cast<int>(std::lround(255.0 + (full[2] - 255.0) * t)));
  return buffer;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt_csv(*v) : std::string();
}

}  // namespace

std::string fmt_csv(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", v);
  return buffer;
}

void write_attributions_jsonl(const std::string& path,
                              const std::vector<AttributionRecord>& records) {
  std::ofstream out = open_out(path);
  for (const AttributionRecord& r : records) {
    json line;
    line["index"] = r.index;
    line["explainer"] = r.explainer;
    line["tokens"] = r.tokens;
    if (!r.names.empty()) {
      line["names"] = r.names;
    }
    line["values"] = r.values;
    line["ranks"] = r.ranks;
    out << line.dump() << "\n";
  }
}

void write_heatmap_html(const std::string& path, const std::string& title,
                        const std::vector<Instance>& instances,
                        const std::vector<Attribution>& attributions,
                        bool with_timestamp) {
  std::ofstream out = open_out(path);
  out << "<!doctype html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
      << "<title>" << html_escape(title) << "</title>\n"
      << "<style>\n"
      << "body { font-family: sans-serif; margin: 2em; }\n"
      << ".inst { margin: 0.6em 0; line-height: 1.9; }\n"
      << ".tok { padding: 2px 4px; margin: 1px; border-radius: 3px; "
         "display: inline-block; }\n"
      << "</style>\n</head>\n<body>\n";
  if (with_timestamp) {
    const auto now = std::chrono::system_clock::now();
    out << "<!-- generated "
        << std::chrono::duration_cast<std::chrono::seconds>(
               now.time_since_epoch())
               .count()
        << " -->\n";
  }
  out << "<h1>" << html_escape(title) << "</h1>\n";
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Attribution& e = attributions[i];
    double max_abs = 0.0;
    for (double v : e.values) {
      max_abs = std::max(max_abs, std::fabs(v));
    }
    out << "<div class=\"inst\" id=\"i" << i << "\">";
    for (std::size_t t = 0; t < instances[i].size(); ++t) {
      // key() renders tabular fields as name=value; for text it is the token.
      out << "<span class=\"tok\" style=\"background-color:"
          << heat_color(e.values[t], max_abs) << "\" title=\""
          << fmt_csv(e.values[t]) << "\">"
          << html_escape(instances[i][t].key()) << "</span> ";
    }
    out << "</div>\n";
  }
  out << "</body>\n</html>\n";
}

void write_metrics_csv(const std::string& path,
                       const std::vector<MetricsRow>& rows) {
  std::ofstream out = open_out(path);
  out << "explainer,comp,suff,delta,df_mit,df_frac,rank_del,rank_ins,"
         "sec_per_instance\n";
  for (const MetricsRow& row : rows) {
    const AggregateMetrics& m = row.metrics;
    out << row.explainer << ',' << fmt_csv(m.mean_comp) << ','
        << fmt_csv(m.mean_suff) << ',' << fmt_csv(m.mean_delta) << ','
        << fmt_csv(m.flip_rate) << ',' << fmt_csv(m.mean_df_frac) << ','
        << fmt_opt(m.mean_rank_del) << ',' << fmt_opt(m.mean_rank_ins) << ','
        << fmt_opt(row.seconds_per_instance) << "\n";
  }
}

void write_curves_json(const std::string& path,
                       const std::vector<CurveSeries>& series) {
  json doc;
  doc["explainers"] = json::object();
  for (const CurveSeries& s : series) {
    json entry;
    entry["fractions"] = s.fractions;
    entry["mean_deletion"] = s.mean_deletion;
    entry["mean_insertion"] = s.mean_insertion;
    json example;
    example["fractions"] = json::array();
    example["deletion"] = json::array();
    example["insertion"] = json::array();
    for (const CurvePoint& p : s.example.deletion) {
      example["fractions"].push_back(p.fraction);
      example["deletion"].push_back(p.value);
    }
    for (const CurvePoint& p : s.example.insertion) {
      example["insertion"].push_back(p.value);
    }
    entry["example"] = example;
    doc["explainers"][s.explainer] = entry;
  }
  open_out(path) << doc.dump(2) << "\n";
}

void write_gt_scores_csv(const std::string& path,
                         const std::vector<GtScoreRow>& rows) {
  std::ofstream out = open_out(path);
  out << "explainer,gt_type,symmetry,precision,normalized_rank,n_included,"
         "n_excluded\n";
  for (const GtScoreRow& row : rows) {
    out << row.explainer << ',' << row.gt_type << ',' << row.symmetry << ','
        << fmt_csv(row.precision) << ',' << fmt_csv(row.normalized_rank)
        << ',' << row.n_included << ',' << row.n_excluded << "\n";
  }
}

void write_perturb_csv(const std::string& path,
                       const std::vector<SweepRow>& rows) {
  std::ofstream out = open_out(path);
  out << "explainer,s,comp,suff,delta,df_mit,df_frac,rank_del,rank_ins\n";
  for (const SweepRow& row : rows) {
    const AggregateMetrics& m = row.metrics;
    out << row.explainer << ',' << fmt_csv(row.s) << ','
        << fmt_csv(m.mean_comp) << ',' << fmt_csv(m.mean_suff) << ','
        << fmt_csv(m.mean_delta) << ',' << fmt_csv(m.flip_rate) << ','
        << fmt_csv(m.mean_df_frac) << ',' << fmt_opt(m.mean_rank_del) << ','
        << fmt_opt(m.mean_rank_ins) << "\n";
  }
}

void write_crossings_json(const std::string& path,
                          const std::vector<CrossingRecord>& crossings) {
  json doc = json::array();
  for (const CrossingRecord& c : crossings) {
    json entry;
    entry["explainer"] = c.explainer;
    entry["s"] = c.s;
    entry["original"] = c.original;
    entry["perturbed"] = c.perturbed;
    doc.push_back(entry);
  }
  open_out(path) << doc.dump(2) << "\n";
}

void write_oracle_check_csv(const std::string& path,
                            const std::vector<OracleCheckRow>& rows) {
  std::ofstream out = open_out(path);
  out << "index,length,status,delta_beam,delta_oracle,equal\n";
  for (const OracleCheckRow& row : rows) {
    out << row.index << ',' << row.length << ',' << row.status << ','
        << (row.delta_beam ? fmt_csv(*row.delta_beam) : std::string()) << ','
        << (row.delta_oracle ? fmt_csv(*row.delta_oracle) : std::string())
        << ',' << (row.equal ? std::to_string(*row.equal) : std::string())
        << "\n";
  }
}

}  // namespace attrbeam::cli
