#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "imds/enumerator.hpp"
#include "imds/text_format.hpp"

namespace py = pybind11;
using namespace imds;

namespace {

// Elements cross the boundary as ints (polynomial-basis bit patterns) and
// matrices as flat row-major lists of 16 ints. Nested 4x4 input is accepted.
Mat4 to_mat(const Field& f, const py::sequence& s) {
  std::vector<unsigned> flat;
  if (s.size() == 4) {
    for (const auto& row : s) {
      const auto r = row.cast<py::sequence>();
      if (r.size() != 4) throw Error(ErrorCode::parse_error, "rows must have 4 entries");
      for (const auto& x : r) flat.push_back(x.cast<unsigned>());
    }
  } else {
    for (const auto& x : s) flat.push_back(x.cast<unsigned>());
  }
  if (flat.size() != 16) throw Error(ErrorCode::parse_error, "a 4x4 matrix needs 16 entries");
  Mat4 m;
  for (std::size_t i = 0; i < 16; ++i) m.e[i] = f.elem(flat[i]);
  return m;
}

std::vector<unsigned> from_mat(const Mat4& m) {
  std::vector<unsigned> out;
  for (Elem x : m.e) out.push_back(x.bits);
  return out;
}

py::tuple from_tuple(const RepTuple& t) {
  return py::make_tuple(t.p.bits, t.q.bits, t.r.bits, t.c.bits, t.d.bits);
}

RepTuple to_tuple(const Field& f, const std::vector<unsigned>& v) {
  if (v.size() != 5) throw Error(ErrorCode::parse_error, "tuple needs 5 entries p, q, r, c, d");
  return {f.elem(v[0]), f.elem(v[1]), f.elem(v[2]), f.elem(v[3]), f.elem(v[4])};
}

py::dict report_dict(const EnumerationReport& r) {
  py::dict d;
  d["m"] = r.m;
  d["poly"] = r.poly;
  d["rep_count"] = r.rep_count;
  d["total_count"] = py::int_(py::str(to_decimal(r.total_count)));
  d["candidates_tested"] = r.candidates_tested;
  d["tuples_scanned"] = r.tuples_scanned;
  d["cursor"] = r.cursor;
  d["completed"] = r.completed;
  d["elapsed"] = r.elapsed;
  return d;
}

SearchJob job_for(const Field& f, SearchMode mode, unsigned workers, std::optional<std::uint64_t> begin,
                  std::optional<std::uint64_t> end) {
  SearchJob job = make_job(f, mode, std::max(1u, workers));
  if (begin) job.range.begin = *begin;
  if (end) job.range.end = *end;
  return job;
}

}  // namespace

PYBIND11_MODULE(imds, m) {
  m.doc() = "Involutory 4x4 MDS matrices over GF(2^m), 3 <= m <= 8";

  static py::exception<Error> exc(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(exc.ptr(), (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<Field>(m, "Field")
      .def(py::init<unsigned, std::optional<std::uint16_t>>(), py::arg("m"), py::arg("poly") = py::none())
      .def_property_readonly("degree", &Field::degree)
      .def_property_readonly("poly", &Field::poly)
      .def_property_readonly("order", &Field::order)
      .def_property_readonly("generator", [](const Field& f) { return f.generator().bits; })
      .def("add", [](const Field& f, unsigned a, unsigned b) { return (f.elem(a) + f.elem(b)).bits; })
      .def("mul", [](const Field& f, unsigned a, unsigned b) { return f.mul(f.elem(a), f.elem(b)).bits; })
      .def("div", [](const Field& f, unsigned a, unsigned b) { return f.div(f.elem(a), f.elem(b)).bits; })
      .def("inv", [](const Field& f, unsigned a) { return f.inv(f.elem(a)).bits; })
      .def("sqrt", [](const Field& f, unsigned a) { return f.sqrt(f.elem(a)).bits; })
      .def("pow", [](const Field& f, unsigned a, long long k) { return f.pow(f.elem(a), k).bits; })
      .def("alpha_pow", [](const Field& f, long long k) { return f.alpha_pow(k).bits; })
      .def("log", [](const Field& f, unsigned a) { return f.log(f.elem(a)); })
      .def("parse", [](const Field& f, const std::string& s) { return parse_elem(f, s).bits; })
      .def("format", [](const Field& f, unsigned a, bool alpha) {
        return format_elem(f, f.elem(a), alpha ? Notation::alpha : Notation::hex);
      }, py::arg("a"), py::arg("alpha") = false)
      .def("__repr__", [](const Field& f) {
        return "Field(m=" + std::to_string(f.degree()) + ", poly=" + format_poly(f.poly()) + ")";
      });

  m.def("default_poly", &default_poly, py::arg("m"));
  m.def("is_irreducible", &is_irreducible, py::arg("poly"));

  m.def("build_representative", [](const Field& f, const std::vector<unsigned>& t) {
    return from_mat(build_representative(f, to_tuple(f, t)));
  }, py::arg("field"), py::arg("tuple"));
  m.def("is_mds_viable", [](const Field& f, const std::vector<unsigned>& t) {
    return is_mds_viable(f, to_tuple(f, t));
  }, py::arg("field"), py::arg("tuple"));
  m.def("is_involutory", [](const Field& f, const py::sequence& a) { return is_involutory(f, to_mat(f, a)); },
        py::arg("field"), py::arg("matrix"));
  m.def("is_mds", [](const Field& f, const py::sequence& a) { return is_mds_full(f, to_mat(f, a)); },
        py::arg("field"), py::arg("matrix"));
  m.def("is_mds_fast", [](const Field& f, const py::sequence& a) {
    return is_mds_fast_involutory(f, to_mat(f, a), true);
  }, py::arg("field"), py::arg("matrix"));
  m.def("rank", [](const Field& f, const py::sequence& a) { return rank(f, to_mat(f, a)); },
        py::arg("field"), py::arg("matrix"));
  m.def("row_col_sums_one", [](const Field& f, const py::sequence& a) { return row_col_sums_one(to_mat(f, a)); },
        py::arg("field"), py::arg("matrix"));

  m.def("canonicalize", [](const Field& f, const py::sequence& a) {
    const Canonical c = canonicalize(f, to_mat(f, a), true);
    py::dict d;
    d["R"] = from_mat(c.R);
    d["D"] = py::make_tuple(c.D.b1.bits, c.D.b2.bits, c.D.b3.bits);
    d["tuple"] = from_tuple(c.tuple);
    return d;
  }, py::arg("field"), py::arg("matrix"));
  m.def("expand", [](const Field& f, const py::sequence& R, const std::vector<unsigned>& D) {
    if (D.size() != 3) throw Error(ErrorCode::parse_error, "D needs 3 entries b1, b2, b3");
    return from_mat(expand(f, to_mat(f, R), {f.elem(D[0]), f.elem(D[1]), f.elem(D[2])}));
  }, py::arg("field"), py::arg("R"), py::arg("D"));

  m.def("tuple_space_size", &tuple_space_size, py::arg("field"));
  m.def("count_representatives", [](const Field& f, unsigned workers, std::optional<std::uint64_t> begin,
                                    std::optional<std::uint64_t> end) {
    const SearchJob job = job_for(f, SearchMode::count, workers, begin, end);
    EnumerationReport r;
    {
      py::gil_scoped_release release;
      r = enumerate_representatives(job);
    }
    return report_dict(r);
  }, py::arg("field"), py::arg("workers") = 1, py::arg("begin") = py::none(), py::arg("end") = py::none());
  m.def("representatives", [](const Field& f, std::optional<std::uint64_t> begin,
                               std::optional<std::uint64_t> end) {
    const SearchJob job = job_for(f, SearchMode::stream_reps, 1, begin, end);
    py::list out;
    enumerate_representatives(job, [&](const RepTuple& t, const Mat4& R) {
      out.append(py::make_tuple(from_tuple(t), from_mat(R)));
    });
    return out;
  }, py::arg("field"), py::arg("begin") = py::none(), py::arg("end") = py::none());

  m.def("format_matrix", [](const Field& f, const py::sequence& a, bool alpha) {
    return format_matrix(f, to_mat(f, a), alpha ? Notation::alpha : Notation::hex);
  }, py::arg("field"), py::arg("matrix"), py::arg("alpha") = false);
  m.def("parse_matrix", [](const Field& f, const std::string& text) { return from_mat(parse_matrix(f, text)); },
        py::arg("field"), py::arg("text"));
}
