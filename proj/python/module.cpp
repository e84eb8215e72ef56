#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sftg/error.hpp"
#include "sftg/extensions.hpp"
#include "sftg/verify.hpp"

namespace py = pybind11;
using namespace sftg;

namespace {

std::vector<std::string> log_lines(const std::vector<TietzeStep>& log) {
  std::vector<std::string> out;
  for (const TietzeStep& s : log) out.push_back(s.to_string());
  return out;
}

std::shared_ptr<const CosetTable> table_of(const CosetTable& t) { return std::make_shared<const CosetTable>(t); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "SFTs on finitely generated groups";
  m.attr("__version__") = tool_version();

  py::register_exception<Error>(m, "SftgError", PyExc_RuntimeError);

  py::class_<Generator>(m, "Generator")
      .def(py::init<std::string>())
      .def_property_readonly("name", &Generator::name)
      .def("__eq__", [](const Generator& a, const Generator& b) { return a == b; })
      .def("__hash__", [](const Generator& g) { return py::hash(py::str(g.name())); })
      .def("__repr__", [](const Generator& g) { return "Generator('" + g.name() + "')"; })
      .def("__str__", &Generator::name);

  py::class_<Word>(m, "Word")
      .def(py::init([](const std::string& text) { return parse_word(text); }), py::arg("text") = "1")
      .def("__len__", &Word::size)
      .def("__str__", &Word::to_string)
      .def("__repr__", [](const Word& w) { return "Word('" + w.to_string() + "')"; })
      .def("__eq__", [](const Word& a, const Word& b) { return a == b; })
      .def("__hash__", [](const Word& w) { return py::hash(py::str(w.to_string())); })
      .def("__mul__", [](const Word& a, const Word& b) { return a * b; })
      .def("__pow__", [](const Word& w, long n) { return w.power(n); })
      .def("inverse", &Word::inverse)
      .def("letters", [](const Word& w) {
        std::vector<std::pair<std::string, int>> out;
        for (const Letter& l : w.letters()) out.emplace_back(l.generator.name(), l.sign);
        return out;
      })
      .def("exponent_sum", [](const Word& w, const std::string& g) { return exponent_sum(w, Generator(g)); })
      .def("cyclic_reduce", [](const Word& w) {
        const CyclicReduction c = cyclic_reduce(w);
        return py::make_tuple(c.core, c.conjugator);
      });

  py::class_<Presentation>(m, "Presentation")
      .def(py::init([](const std::string& text) { return parse_presentation(text); }))
      .def_static("surface", &surface_presentation, py::arg("genus"))
      .def_property_readonly("generators", [](const Presentation& p) {
        std::vector<std::string> out;
        for (const Generator& g : p.generators()) out.push_back(g.name());
        return out;
      })
      .def_property_readonly("relators", &Presentation::relators)
      .def_property_readonly("rank", &Presentation::rank)
      .def("__str__", &Presentation::to_string)
      .def("__repr__", [](const Presentation& p) { return "Presentation('" + p.to_string() + "')"; })
      .def("__eq__", [](const Presentation& a, const Presentation& b) { return a == b; });

  py::class_<Witness>(m, "Witness")
      .def_readonly("presentation", &Witness::presentation)
      .def_property_readonly("zero_generator", [](const Witness& w) { return w.zero_generator.name(); })
      .def_property_readonly("log", [](const Witness& w) { return log_lines(w.log); })
      .def_readonly("measures", &Witness::measures)
      .def_readonly("substitutions", &Witness::substitutions);

  py::class_<FreeProductSplit>(m, "FreeProductSplit")
      .def_property_readonly("absent_generator", [](const FreeProductSplit& s) { return s.absent_generator.name(); })
      .def_readonly("current", &FreeProductSplit::current)
      .def_readonly("remaining", &FreeProductSplit::remaining)
      .def_property_readonly("log", [](const FreeProductSplit& s) { return log_lines(s.log); })
      .def_readonly("measures", &FreeProductSplit::measures);

  m.def("magnus_moldavansky", [](const Presentation& p) -> py::object {
    const RewriteOutcome r = magnus_moldavansky(p);
    if (const auto* w = std::get_if<Witness>(&r)) return py::cast(*w);
    return py::cast(std::get<FreeProductSplit>(r));
  });
  m.def("replays_to", [](const Presentation& p, const Witness& w) { return replay(p, w.log) == w.presentation; });
  m.def("exponent_hom_check", [](const Presentation& p, const std::string& g) {
    const HomCertificate c = exponent_hom_check(p, Generator(g));
    return py::make_tuple(c.valid, c.relator_sums);
  });

  py::class_<CosetTable>(m, "CosetTable")
      .def_property_readonly("index", &CosetTable::index)
      .def_property_readonly("representatives", [](const CosetTable& t) { return t.representatives; })
      .def("coset_of", [](const CosetTable& t, const Word& w) { return t.coset_of(w); })
      .def("check", [](const CosetTable& t) { return check_table(t).ok; })
      .def("to_text", [](const CosetTable& t) { return to_text(t); })
      .def_static("parse", [](const std::string& text) { return parse_coset_table(text); });
  m.def(
      "todd_coxeter",
      [](const Presentation& p, const std::vector<Word>& subgroup, std::size_t max_cosets) {
        return todd_coxeter(p, subgroup, max_cosets);
      },
      py::arg("presentation"), py::arg("subgroup"), py::arg("max_cosets") = 100000);
  m.def("abelian_quotient_table", &abelian_quotient_table, py::arg("presentation"), py::arg("modulus") = 2);

  py::class_<Sft>(m, "Sft")
      .def_static("parse", [](const std::string& text) { return parse_sft(text); })
      .def("to_text", [](const Sft& s) { return to_text(s); })
      .def_property_readonly("alphabet", [](const Sft& s) { return s.alphabet().letters(); })
      .def_property_readonly("pattern_count", [](const Sft& s) { return s.forbidden().size(); })
      .def_property_readonly("model", [](const Sft& s) { return s.ambient()->describe(); });

  py::class_<Embedding>(m, "Embedding")
      .def_static("parse", [](const std::string& text) { return parse_embedding(text); })
      .def("to_text", [](const Embedding& e) { return to_text(e); })
      .def_property_readonly("index", &Embedding::index);

  m.def("free_extension", &free_extension);
  m.def("right_extension", [](const Sft& x, const Embedding& e) {
    const RightExtension r = right_extension(x, e);
    return py::make_tuple(r.sft, r.type1, r.type2);
  });

  m.def(
      "tile_ball",
      [](const Sft& s, std::size_t radius, std::size_t budget) {
        const TileResult r = tile_ball(s, std::make_shared<const Ball>(s.ambient(), radius), budget);
        py::dict out;
        out["outcome"] = to_string(r.outcome);
        out["nodes"] = r.nodes_explored;
        if (r.config) {
          std::vector<std::pair<std::string, std::string>> cells;
          for (std::size_t i = 0; i < r.config->ball->size(); ++i) {
            cells.emplace_back(r.config->ball->element(i).to_string(), s.alphabet().name(*r.config->colors[i]));
          }
          out["config"] = cells;
        }
        return out;
      },
      py::arg("sft"), py::arg("radius"), py::arg("budget") = 2000000);

  m.def(
      "search_periodic",
      [](const Sft& s, const std::vector<CosetTable>& quotients, std::size_t budget) {
        std::vector<std::shared_ptr<const CosetTable>> qs;
        for (const CosetTable& t : quotients) qs.push_back(table_of(t));
        const PeriodicSearchResult r = search_strongly_periodic(s, qs, budget);
        py::dict out;
        out["outcome"] = to_string(r.outcome);
        out["nodes"] = r.nodes_explored;
        if (r.config) {
          std::vector<std::string> colors;
          for (Color c : r.config->colors) colors.push_back(s.alphabet().name(c));
          out["quotient"] = r.quotient;
          out["colors"] = colors;
        }
        return out;
      },
      py::arg("sft"), py::arg("quotients"), py::arg("budget") = 2000000);

  m.def(
      "analyze",
      [](const Presentation& p, std::optional<Sft> plug, std::size_t radius, std::size_t budget, bool json) {
        PipelineOptions o;
        o.radius = radius;
        o.node_budget = budget;
        RunManifest manifest{"analyze", {"<python>"}, {{"radius", std::to_string(radius)}}, tool_version()};
        const CertificateReport r = check_theorem15_pipeline(p, plug, {}, o, manifest);
        return json ? to_json(r) : to_text(r);
      },
      py::arg("presentation"), py::arg("plug") = py::none(), py::arg("radius") = 3, py::arg("budget") = 2000000,
      py::arg("json") = true);
}
