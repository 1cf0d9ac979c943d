#include <charconv>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "polariton/experiment.hpp"

namespace polariton {

std::string format_double(double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void write_series_csv(const ObservableSeries& series, std::ostream& out) {
  out << "t,omega_l,kappa,j,gamma";
  for (int s = 1; s <= series.site_count; ++s) out << ",n_" << s;
  for (int s = 1; s <= series.site_count; ++s) out << ",f_" << s;
  out << ",trace,purity\n";
  for (size_t i = 0; i < series.times.size(); ++i) {
    out << format_double(series.times[i]) << ',' << format_double(series.omega_l[i]) << ','
        << format_double(series.kappa[i]) << ',' << format_double(series.J[i]) << ','
        << format_double(series.gamma[i]);
    for (double v : series.mean_n[i]) out << ',' << format_double(v);
    for (double v : series.fluctuation[i]) out << ',' << format_double(v);
    out << ',' << format_double(series.trace[i]) << ',' << format_double(series.purity[i])
        << '\n';
  }
}

void write_series_json(const ObservableSeries& series, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["t"] = series.times;
  doc["omega_l"] = series.omega_l;
  doc["kappa"] = series.kappa;
  doc["j"] = series.J;
  doc["gamma"] = series.gamma;
  for (int s = 0; s < series.site_count; ++s) {
    std::vector<double> n(series.times.size()), f(series.times.size());
    for (size_t i = 0; i < series.times.size(); ++i) {
      n[i] = series.mean_n[i][static_cast<size_t>(s)];
      f[i] = series.fluctuation[i][static_cast<size_t>(s)];
    }
    doc["n_" + std::to_string(s + 1)] = n;
    doc["f_" + std::to_string(s + 1)] = f;
  }
  doc["trace"] = series.trace;
  doc["purity"] = series.purity;
  out << doc.dump(2) << '\n';
}

}  // namespace polariton
