#pragma once

// JSON and CSV conversions. Complex numbers are [re, im] pairs everywhere;
// plain numbers are accepted on input as real values. Matrices are lists of
// rows.

#include "orbitframes/biinfinite.hpp"
#include "orbitframes/model_space.hpp"
#include "orbitframes/orbit_frames.hpp"
#include "orbitframes/spectral_constructors.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace orbitframes::io {

using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Json to_json(const VectorXcd& v);
Json to_json(const MatrixXcd& m);
Json to_json(const ZeroSequence<double>& zeros);
Json to_json(const FrameReport& r);
Json to_json(const BoundInterval& b);
Json to_json(const NormalOrbitSpec& s);
Json to_json(const ArcSet& sigma);
/// zeros, dim, trunc, shift_matrix, phi, gram_residual.
Json model_space_summary(const ModelSpace& ms);

/// The parsers throw InputError naming `what` on malformed input.
Complex complex_from_json(const Json& j, const std::string& what);
std::vector<Complex> complex_list_from_json(const Json& j, const std::string& what);
VectorXcd vector_from_json(const Json& j, const std::string& what);
MatrixXcd matrix_from_json(const Json& j, const std::string& what);
ZeroSequence<double> zeros_from_json(const Json& j, const std::string& what);
/// "full" or a list of [start, end] radian pairs.
ArcSet arcs_from_json(const Json& j, const std::string& what);

/// One line per entry: row,col,re,im.
void write_matrix_csv(std::ostream& os, const MatrixXcd& m);

/// Columns of equal length under a header line.
void write_columns_csv(std::ostream& os, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns);

}  // namespace orbitframes::io
