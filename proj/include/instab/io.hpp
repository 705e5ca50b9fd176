#ifndef INSTAB_IO_HPP
#define INSTAB_IO_HPP

#include <map>
#include <string>
#include <string_view>

#include "instab/matrix.hpp"

namespace instab {

/// A system-description document: field "n" plus named n x n matrices given
/// as arrays of row arrays of numbers. Which keys are expected depends on
/// the command ("K"/"C", "G"/"K", "M"/"A2"/"A3", or a bare "M").
struct MatrixDocument {
    int n = 0;
    std::map<std::string, RealSquareMatrix, std::less<>> matrices;
};

MatrixDocument parse_matrix_document(const std::string& text);
MatrixDocument load_matrix_document(const std::string& path);

/// The named matrix, or InputError naming the missing key.
const RealSquareMatrix& require_matrix(const MatrixDocument& doc,
                                       std::string_view key);

} // namespace instab

#endif
