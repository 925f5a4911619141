#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "webnav/errors.hpp"
#include "webnav/graph.hpp"
#include "webnav/ingest.hpp"
#include "webnav/metrics.hpp"
#include "webnav/run.hpp"

namespace py = pybind11;
using namespace webnav;

namespace {

std::string config_value(const py::handle& v) {
  if (py::isinstance<py::bool_>(v)) return v.cast<bool>() ? "true" : "false";
  return py::str(v).cast<std::string>();
}

py::dict manifest_dict(const RunManifest& m) {
  py::dict d;
  for (const auto& [k, v] : m.entries) d[py::str(k)] = v;
  d["manifest"] = m.path.string();
  return d;
}

py::dict sessionize_records(const py::iterable& records, std::int64_t timeout, bool by_host) {
  TrafficTally tally;
  std::vector<SessionDescriptor> sessions;
  SessionizeOptions options;
  options.timeout = timeout;
  options.entropy_by_host = by_host;
  Sessionizer s(tally, [&](const SessionDescriptor& d) { sessions.push_back(d); }, options);
  for (const auto& item : records) {
    const auto t = item.cast<py::tuple>();
    if (t.size() != 4) throw py::value_error("records are (timestamp, user, referrer, target) tuples");
    LogRecord rec;
    rec.timestamp = t[0].cast<std::int64_t>();
    rec.user = t[1].cast<std::string>();
    rec.referrer = t[2].is_none() ? std::string() : t[2].cast<std::string>();
    if (rec.referrer == "-") rec.referrer.clear();
    rec.target = t[3].cast<std::string>();
    s.add(rec);
  }
  s.finish();

  const auto& pages = s.pages();
  const auto& users = s.users();
  py::list out_sessions;
  for (const auto& d : sessions)
    out_sessions.append(py::make_tuple(users.label(d.user), d.session_index, pages.label(d.root), d.size, d.depth));
  py::dict page_traffic, link_traffic, starts, entropy;
  for (const auto& [p, n] : tally.page_visits()) page_traffic[py::str(pages.label(p))] = n;
  for (const auto& [k, n] : tally.link_visits())
    link_traffic[py::make_tuple(pages.label(link_source(k)), pages.label(link_target(k)))] = n;
  for (const auto& [p, n] : tally.session_starts()) starts[py::str(pages.label(p))] = n;
  for (const auto& [u, visits] : tally.user_visits()) entropy[py::str(users.label(u))] = user_entropy(tally, u);

  py::dict result;
  result["sessions"] = out_sessions;
  result["page_traffic"] = page_traffic;
  result["link_traffic"] = link_traffic;
  result["empty_referrer_traffic"] = starts;
  result["entropy"] = entropy;
  return result;
}

}  // namespace

PYBIND11_MODULE(_webnav, m) {
  m.doc() = "Web navigation models and session analysis";
  m.attr("__version__") = std::string(kVersion);

  static py::exception<Error> base(m, "WebnavError", PyExc_RuntimeError);
  static py::exception<ConfigError> config_error(m, "ConfigError", base.ptr());
  static py::exception<ParseError> parse_error(m, "ParseError", config_error.ptr());
  static py::exception<DataError> data_error(m, "DataError", base.ptr());
  static py::exception<StatisticsError> stats_error(m, "StatisticsError", base.ptr());
  static py::exception<ProtocolError> protocol_error(m, "ProtocolError", base.ptr());
  static py::exception<IoError> io_error(m, "IoError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const ConfigError& e) {
      py::set_error(config_error, e.what());
    } catch (const DataError& e) {
      py::set_error(data_error, e.what());
    } catch (const StatisticsError& e) {
      py::set_error(stats_error, e.what());
    } catch (const ProtocolError& e) {
      py::set_error(protocol_error, e.what());
    } catch (const IoError& e) {
      py::set_error(io_error, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  py::class_<WebGraph>(m, "Graph")
      .def_property_readonly("size", &WebGraph::size)
      .def_property_readonly("edge_count", &WebGraph::edge_count)
      .def("__len__", &WebGraph::size)
      .def(
          "out_neighbors",
          [](const WebGraph& g, NodeId u) {
            const auto nb = g.out_neighbors(u);
            return std::vector<NodeId>(nb.begin(), nb.end());
          },
          py::arg("u"))
      .def("degrees", [](const WebGraph& g) {
        std::vector<std::size_t> d(g.size());
        for (NodeId u = 0; u < g.size(); ++u) d[u] = g.out_degree(u);
        return d;
      });

  m.def(
      "generate_scale_free",
      [](std::size_t n, std::size_t mm, double gamma, std::uint64_t seed) {
        return generate_scale_free({n, mm, gamma, seed});
      },
      py::arg("n"), py::arg("m") = 3, py::arg("gamma") = 2.1, py::arg("seed") = 1);
  m.def("load_edge_list", &load_edge_list, py::arg("path"), py::arg("symmetrize") = true);
  m.def("save_edge_list", &save_edge_list, py::arg("path"), py::arg("graph"));

  py::class_<BookmarkList>(m, "BookmarkList")
      .def(py::init<>())
      .def("touch", &BookmarkList::touch, py::arg("page"))
      .def("visits", &BookmarkList::visits, py::arg("page"))
      .def("__len__", &BookmarkList::size)
      .def("entries",
           [](const BookmarkList& b) {
             std::vector<std::pair<NodeId, std::uint64_t>> out;
             for (const auto& e : b.entries()) out.emplace_back(e.page, e.visits);
             return out;
           })
      .def(
          "sample",
          [](const BookmarkList& b, double beta, std::size_t count, std::uint64_t seed) {
            if (b.empty()) throw py::value_error("bookmark list is empty");
            Rng rng(seed);
            std::vector<NodeId> out(count);
            for (auto& x : out) x = b.sample(beta, rng);
            return out;
          },
          py::arg("beta"), py::arg("count") = 1, py::arg("seed") = 1);

  py::class_<PowerLawFit>(m, "PowerLawFit")
      .def_readonly("alpha", &PowerLawFit::alpha)
      .def_readonly("xmin", &PowerLawFit::xmin)
      .def_readonly("n_tail", &PowerLawFit::n_tail)
      .def_readonly("std_error", &PowerLawFit::std_error)
      .def("__repr__", [](const PowerLawFit& f) {
        return "PowerLawFit(alpha=" + std::to_string(f.alpha) + ", xmin=" + std::to_string(f.xmin) +
               ", n_tail=" + std::to_string(f.n_tail) + ")";
      });

  m.def(
      "fit_power_law",
      [](const std::vector<std::uint64_t>& samples, std::uint64_t xmin) { return fit_power_law(samples, xmin); },
      py::arg("samples"), py::arg("xmin") = 1);
  m.def(
      "log_histogram",
      [](const std::vector<std::uint64_t>& samples, double ratio) {
        std::vector<std::tuple<double, double, std::uint64_t, double>> out;
        for (const auto& b : log_histogram(samples, ratio).bins) out.emplace_back(b.lo, b.hi, b.count, b.density);
        return out;
      },
      py::arg("samples"), py::arg("ratio") = kDefaultBinRatio);
  m.def(
      "ccdf",
      [](const std::vector<double>& samples) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : ccdf(samples)) out.emplace_back(p.value, p.probability);
        return out;
      },
      py::arg("samples"));
  m.def(
      "ks_statistic",
      [](const std::vector<double>& a, const std::vector<double>& b) { return ks_statistic(a, b); }, py::arg("a"),
      py::arg("b"));
  m.def(
      "shannon_entropy", [](const std::vector<Count>& counts) { return shannon_entropy_bits(counts); },
      py::arg("counts"));

  m.def("sessionize", &sessionize_records, py::arg("records"), py::arg("timeout") = 1800,
        py::arg("by_host") = false,
        "Groups (timestamp, user, referrer, target) records into logical sessions.");

  m.def(
      "simulate",
      [](const py::dict& settings) {
        SimConfig config;
        for (const auto& [k, v] : settings) config.set(py::str(k).cast<std::string>(), config_value(v));
        py::gil_scoped_release release;
        auto manifest = run_simulation(config);
        py::gil_scoped_acquire acquire;
        return manifest_dict(manifest);
      },
      py::arg("settings"), "Runs a simulation; keys match the config file keys.");
  m.def(
      "ingest",
      [](const std::filesystem::path& log, const std::filesystem::path& out, std::int64_t timeout,
         bool strip_query, std::vector<std::string> extensions, bool by_host) {
        IngestConfig config;
        config.log = log;
        config.out = out;
        config.options.sessionize.timeout = timeout;
        config.options.sessionize.entropy_by_host = by_host;
        config.options.parse.strip_query = strip_query;
        config.options.parse.page_extensions = std::move(extensions);
        return manifest_dict(run_ingest(config));
      },
      py::arg("log"), py::arg("out"), py::arg("timeout") = 1800, py::arg("strip_query") = false,
      py::arg("extensions") = std::vector<std::string>{}, py::arg("by_host") = false);
  m.def(
      "compare_runs",
      [](const std::filesystem::path& a, const std::filesystem::path& b) {
        py::list rows;
        for (const auto& r : compare_runs(load_manifest(a), load_manifest(b))) {
          py::dict row;
          row["metric"] = r.metric;
          row["alpha_a"] = r.alpha_a ? py::cast(*r.alpha_a) : py::none();
          row["alpha_b"] = r.alpha_b ? py::cast(*r.alpha_b) : py::none();
          row["mean_a"] = r.mean_a;
          row["mean_b"] = r.mean_b;
          row["ks"] = r.ks;
          rows.append(row);
        }
        return rows;
      },
      py::arg("a"), py::arg("b"));
}
