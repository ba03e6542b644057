#include "manetsim/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace manet {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string to_hex(std::uint64_t value) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

namespace {

void stamp(std::ostream& out, std::string_view kind,
           std::string_view config_hash, std::uint64_t seed) {
  out << "# manetsim " << kind << " v1 config_hash=" << config_hash
      << " seed=" << seed << '\n';
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void write_curves_csv(std::ostream& out,
                      const std::vector<ConnectivityCurve>& curves,
                      const std::map<int, LogisticFit>* fits,
                      std::string_view config_hash, std::uint64_t seed) {
  stamp(out, "curves", config_hash, seed);
  out << "z,sigma,eta_mean,eta_stderr,realizations";
  if (fits) out << ",eta_model";
  out << '\n';
  for (const auto& curve : curves) {
    const LogisticFit* fit = nullptr;
    if (fits) {
      const auto it = fits->find(curve.z);
      if (it != fits->end()) fit = &it->second;
    }
    for (const auto& p : curve.points) {
      out << curve.z << ',' << fmt(p.sigma) << ',' << fmt(p.eta_mean) << ','
          << fmt(p.eta_stderr) << ',' << p.realizations;
      if (fits) {
        out << ',';
        if (fit) out << fmt(logistic_eta(fit->eta0, fit->g, p.sigma));
      }
      out << '\n';
    }
  }
}

std::vector<ConnectivityCurve> read_curves_csv(std::istream& in) {
  std::vector<ConnectivityCurve> curves;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line.rfind("z,sigma,", 0) != 0) {
        throw std::runtime_error("curves csv: unexpected header: " + line);
      }
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    CurvePoint p;
    int z = 0;
    std::getline(row, cell, ',');
    z = std::stoi(cell);
    std::getline(row, cell, ',');
    p.sigma = std::stod(cell);
    std::getline(row, cell, ',');
    p.eta_mean = std::stod(cell);
    std::getline(row, cell, ',');
    p.eta_stderr = std::stod(cell);
    std::getline(row, cell, ',');
    p.realizations = std::stoll(cell);
    if (curves.empty() || curves.back().z != z) {
      curves.push_back(ConnectivityCurve{z, 0, {}});
    }
    curves.back().points.push_back(p);
  }
  if (!header_seen) throw std::runtime_error("curves csv: no header found");
  return curves;
}

void write_collapse_csv(std::ostream& out,
                        const std::vector<ConnectivityCurve>& curves,
                        const CollapseResult& collapse,
                        std::string_view config_hash, std::uint64_t seed) {
  stamp(out, "collapse", config_hash, seed);
  out << "# beta=" << fmt(collapse.beta)
      << " residual=" << fmt(collapse.residual)
      << " anchor_sigma0=" << fmt(collapse.anchor_sigma0)
      << " reference_z=" << collapse.reference_z << '\n';
  out << "z,x,eta_mean\n";
  const double ln_anchor = std::log(collapse.anchor_sigma0);
  for (const auto& curve : curves) {
    const double R =
        (curve.z == collapse.reference_z) ? 1.0 : static_cast<double>(curve.z - 1);
    const double scale = std::pow(R, collapse.beta);
    for (const auto& p : curve.points) {
      out << curve.z << ','
          << fmt(scale * (std::log(p.sigma) - ln_anchor)) << ','
          << fmt(p.eta_mean) << '\n';
    }
  }
}

void write_collapse_profile_csv(std::ostream& out,
                                const CollapseResult& collapse,
                                std::string_view config_hash,
                                std::uint64_t seed) {
  stamp(out, "collapse-profile", config_hash, seed);
  out << "beta,objective\n";
  for (const auto& [beta, objective] : collapse.profile) {
    out << fmt(beta) << ',';
    if (std::isfinite(objective)) out << fmt(objective);
    out << '\n';
  }
}

void write_metrics_csv(std::ostream& out, const MetricsTable& table,
                       std::string_view config_hash, std::uint64_t seed) {
  stamp(out, "metrics", config_hash, seed);
  table.write_csv(out);
}

void write_kc_sweep_csv(std::ostream& out, int z,
                        const std::vector<KcSweepRow>& rows,
                        std::string_view config_hash, std::uint64_t seed) {
  stamp(out, "kc-sweep", config_hash, seed);
  out << "z,sigma,k_c,mean_degree,accepted,attempts\n";
  for (const auto& r : rows) {
    out << z << ',' << fmt(r.sigma) << ',' << r.k_c << ','
        << fmt(r.mean_degree) << ',' << r.accepted << ',' << r.attempts
        << '\n';
  }
}

std::string gnuplot_curves_script(const std::string& csv_name,
                                  const std::vector<int>& z_list) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set xlabel 'sigma'\nset ylabel 'eta'\nset key left top\n"
    << "set yrange [0:1.05]\n";
  s << "plot ";
  bool first = true;
  for (int z : z_list) {
    if (!first) s << ", \\\n     ";
    first = false;
    s << "'" << csv_name << "' using 2:($1==" << z
      << "?$3:1/0) with linespoints title 'z=" << z << "'";
    s << ", '" << csv_name << "' using 2:($1==" << z
      << "?$6:1/0) with lines dashtype 2 notitle";
  }
  s << "\npause -1\n";
  return s.str();
}

std::string gnuplot_collapse_script(const std::string& csv_name,
                                    const std::vector<int>& z_list) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set xlabel 'R^beta (ln sigma - ln sigma0)'\nset ylabel 'eta'\n"
    << "set key left top\n";
  s << "plot ";
  bool first = true;
  for (int z : z_list) {
    if (!first) s << ", \\\n     ";
    first = false;
    s << "'" << csv_name << "' using 2:($1==" << z
      << "?$3:1/0) with points title 'z=" << z << "'";
  }
  s << "\npause -1\n";
  return s.str();
}

std::string gnuplot_metrics_script(const std::vector<std::string>& csv_names) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set xlabel 'k'\nset key right top\n";
  s << "plot ";
  bool first = true;
  for (const auto& name : csv_names) {
    if (!first) s << ", \\\n     ";
    first = false;
    s << "'" << name << "' using 1:2 with linespoints title '" << name << "'";
  }
  s << "\npause -1\n";
  return s.str();
}

}  // namespace manet
