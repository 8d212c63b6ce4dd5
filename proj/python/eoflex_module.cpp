#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>
#include <optional>

#include "eoflex/array.hpp"
#include "eoflex/codec.hpp"
#include "eoflex/decoder.hpp"
#include "eoflex/error.hpp"
#include "eoflex/metrics.hpp"
#include "eoflex/oracle.hpp"
#include "eoflex/params.hpp"
#include "eoflex/shardio.hpp"

namespace py = pybind11;
using namespace eoflex;

namespace {

// Columns are passed as bytes of rows*lane_width, cell i at offset i*lane_width.
std::size_t column_lane_width(const CodeParams& cp, std::size_t size) {
    if (size == 0 || size % static_cast<std::size_t>(cp.rows) != 0)
        throw CodeError(ErrorCode::InvalidParams,
                        "column length " + std::to_string(size) + " is not a positive multiple of " + std::to_string(cp.rows));
    return size / static_cast<std::size_t>(cp.rows);
}

void load_column(CodeArray& a, int j, const std::string& bytes) {
    const std::size_t w = a.lane_width();
    if (bytes.size() != w * static_cast<std::size_t>(a.rows()))
        throw CodeError(ErrorCode::InvalidParams, "column " + std::to_string(j) + " has a different length");
    for (int i = 0; i < a.rows(); ++i) std::memcpy(a.cell(i, j), bytes.data() + static_cast<std::size_t>(i) * w, w);
}

std::vector<py::bytes> dump_columns(const CodeArray& a) {
    const std::size_t w = a.lane_width();
    std::vector<py::bytes> out;
    for (int j = 0; j < a.columns(); ++j) {
        std::string col(w * static_cast<std::size_t>(a.rows()), '\0');
        for (int i = 0; i < a.rows(); ++i) std::memcpy(col.data() + static_cast<std::size_t>(i) * w, a.cell(i, j), w);
        out.emplace_back(std::move(col));
    }
    return out;
}

std::vector<py::bytes> py_encode(const CodeParams& cp, const std::vector<std::string>& info) {
    if (static_cast<int>(info.size()) != cp.k)
        throw CodeError(ErrorCode::InvalidParams, "expected " + std::to_string(cp.k) + " information columns");
    CodeArray a(cp, column_lane_width(cp, info.front().size()));
    for (int j = 0; j < cp.k; ++j) load_column(a, j, info[static_cast<std::size_t>(j)]);
    {
        py::gil_scoped_release release;
        encode(a);
    }
    return dump_columns(a);
}

std::vector<py::bytes> py_decode(const CodeParams& cp, const std::vector<std::optional<std::string>>& columns) {
    if (static_cast<int>(columns.size()) != cp.columns())
        throw CodeError(ErrorCode::InvalidParams, "expected " + std::to_string(cp.columns()) + " columns");
    std::vector<int> erased;
    std::optional<std::size_t> width;
    for (int j = 0; j < cp.columns(); ++j) {
        if (!columns[static_cast<std::size_t>(j)]) erased.push_back(j);
        else if (!width) width = column_lane_width(cp, columns[static_cast<std::size_t>(j)]->size());
    }
    if (erased.size() > 2) throw CodeError(ErrorCode::TooManyMissing, std::to_string(erased.size()) + " columns missing");
    CodeArray a(cp, *width);
    for (int j = 0; j < cp.columns(); ++j)
        if (columns[static_cast<std::size_t>(j)]) load_column(a, j, *columns[static_cast<std::size_t>(j)]);
    const ErasurePattern pattern(cp, erased);
    {
        py::gil_scoped_release release;
        decode(a, pattern);
    }
    return dump_columns(a);
}

py::tuple ratio_tuple(const Ratio& r) { return py::make_tuple(r.num(), r.den()); }

}  // namespace

PYBIND11_MODULE(_eoflex, m) {
    m.doc() = "Two-erasure binary array code over tau*(p-1) rows and k+2 columns";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> code_error;
    code_error.call_once_and_store_result([&m]() { return py::exception<CodeError>(m, "CodeError", PyExc_ValueError); });
    py::register_exception_translator([](std::exception_ptr ep) {
        try {
            if (ep) std::rethrow_exception(ep);
        } catch (const CodeError& e) {
            const py::handle type = code_error.get_stored();
            py::object err = type(e.what());
            err.attr("code") = to_string(e.code());
            err.attr("value") = e.value();
            PyErr_SetObject(type.ptr(), err.ptr());
        }
    });

    py::class_<CodeParams>(m, "CodeParams")
        .def_readonly("tau", &CodeParams::tau)
        .def_readonly("p", &CodeParams::p)
        .def_readonly("k", &CodeParams::k)
        .def_readonly("t", &CodeParams::t)
        .def_readonly("n_c", &CodeParams::n_c)
        .def_readonly("rows", &CodeParams::rows)
        .def_readonly("ring", &CodeParams::ring)
        .def_property_readonly("regime", [](const CodeParams& cp) { return std::string(to_string(cp.regime)); })
        .def_property_readonly("columns", &CodeParams::columns)
        .def("__eq__", [](const CodeParams& a, const CodeParams& b) { return a == b; })
        .def("__repr__", [](const CodeParams& cp) { return "CodeParams" + to_string(cp); });

    m.def("validate_params", &validate_params, py::arg("tau"), py::arg("p"), py::arg("k"));
    m.def("encode", &py_encode, py::arg("params"), py::arg("info"),
          "Encode k equal-length information columns; returns all k+2 columns.");
    m.def("decode", &py_decode, py::arg("params"), py::arg("columns"),
          "Rebuild up to two columns given as None; returns all k+2 columns.");
    m.def("two_info_recoverable", &two_info_recoverable, py::arg("params"), py::arg("f"), py::arg("g"));

    m.def("count_encode_xors", &count_encode_xors, py::arg("params"));
    m.def("encode_formula", &encode_formula, py::arg("params"));
    m.def(
        "count_decode_xors",
        [](const CodeParams& cp, int f, int g) {
            const DecodeMeasurement d = count_decode_xors(cp, f, g);
            py::dict out;
            out["stalled"] = d.stalled;
            out["schedule"] = std::string(to_string(d.plan.schedule));
            out["sum_xors"] = d.sum_xors;
            out["chain_xors"] = d.chain_xors;
            out["syndrome_xors"] = d.syndrome_xors;
            out["total"] = d.total();
            out["formula"] = d.formula.total();
            out["case"] = std::string(to_string(d.formula.decode_case));
            return out;
        },
        py::arg("params"), py::arg("f"), py::arg("g"));
    m.def(
        "update_complexity",
        [](const CodeParams& cp) {
            const UpdateComplexity u = measure_update_complexity(cp);
            py::dict out;
            out["measured"] = ratio_tuple(u.measured);
            out["exact"] = ratio_tuple(u.exact);
            out["formula"] = ratio_tuple(u.formula);
            out["lower_bound"] = ratio_tuple(u.lower_bound);
            return out;
        },
        py::arg("params"), "Each value is a (numerator, denominator) pair.");
    m.def(
        "mds_check",
        [](const CodeParams& cp, int trials, std::uint64_t seed) {
            MdsReport r;
            {
                py::gil_scoped_release release;
                r = mds_exhaustive_check(cp, trials, seed);
            }
            py::list failing;
            for (const PairResult& pr : r.pairs)
                if (pr.failures != 0 || pr.underdetermined) failing.append(py::make_tuple(pr.a, pr.b));
            return py::make_tuple(r.pairs_tested(), failing);
        },
        py::arg("params"), py::arg("trials") = 20, py::arg("seed") = 1,
        "Returns (pairs tested, list of failing column pairs).");

    m.def(
        "shard_file",
        [](const std::filesystem::path& input, const CodeParams& cp, std::size_t lane_width,
           const std::filesystem::path& out_dir) {
            py::gil_scoped_release release;
            return shard_file(input, cp, lane_width, out_dir);
        },
        py::arg("input"), py::arg("params"), py::arg("lane_width") = kDefaultShardLaneWidth, py::arg("out_dir"));
    m.def(
        "reconstruct",
        [](const std::filesystem::path& dir, const std::filesystem::path& output) {
            ReconstructResult r;
            {
                py::gil_scoped_release release;
                r = reconstruct(dir, output);
            }
            return py::make_tuple(r.missing, r.bytes_written);
        },
        py::arg("shard_dir"), py::arg("output"), "Returns (missing columns, bytes written).");
}
