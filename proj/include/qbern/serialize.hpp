#pragma once

#include <json.hpp>

#include <cstddef>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace qbern {

using nlohmann::json;

inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ParseError("expected a rational string, got " + j.dump());
}

/// Polynomials are arrays of rational strings, lowest degree first.
inline json to_json(const Poly& p) {
    json arr = json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.str());
    return arr;
}

inline Poly poly_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected a JSON array of rationals, got " + j.dump());
    std::vector<Rational> cs;
    for (const auto& e : j) cs.push_back(rational_from_json(e));
    return Poly(std::move(cs));
}

inline json to_json(const RMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline RMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : j) {
        if (!r.is_array()) throw ParseError("expected an array of rows");
        std::vector<Rational> row;
        for (const auto& e : r) row.push_back(rational_from_json(e));
        rows.push_back(std::move(row));
    }
    return RMatrix(rows);
}

/// Right-aligned plain-text table, one row per line.
inline std::string to_table(const RMatrix& m) {
    std::vector<std::size_t> width(m.cols(), 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) width[j] = std::max(width[j], m(i, j).str().size());
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) os << "  ";
            os << std::setw(static_cast<int>(width[j])) << m(i, j).str();
        }
        os << '\n';
    }
    return os.str();
}

} // namespace qbern
