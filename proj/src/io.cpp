#include "instab/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace instab {

MatrixDocument parse_matrix_document(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("matrix document: ") + e.what());
    }
    if (!doc.is_object())
        throw InputError("matrix document: top level must be an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw InputError("matrix document: integer field 'n' is required");
    const int n = doc["n"].get<int>();
    if (n < 1)
        throw InputError("matrix document: 'n' must be positive");

    MatrixDocument out;
    out.n = n;
    for (const auto& [key, value] : doc.items()) {
        if (key == "n")
            continue;
        if (!value.is_array() || static_cast<int>(value.size()) != n)
            throw InputError("matrix document: '" + key + "' must be an array of " +
                             std::to_string(n) + " rows");
        std::vector<double> entries;
        entries.reserve(static_cast<size_t>(n) * n);
        for (const auto& row : value) {
            if (!row.is_array() || static_cast<int>(row.size()) != n)
                throw InputError("matrix document: '" + key + "' rows must hold " +
                                 std::to_string(n) + " numbers");
            for (const auto& cell : row) {
                if (!cell.is_number())
                    throw InputError("matrix document: '" + key +
                                     "' contains a non-numeric entry");
                entries.push_back(cell.get<double>());
            }
        }
        out.matrices.emplace(key, RealSquareMatrix(n, std::move(entries)));
    }
    return out;
}

MatrixDocument load_matrix_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix_document(buf.str());
}

const RealSquareMatrix& require_matrix(const MatrixDocument& doc,
                                       std::string_view key) {
    const auto it = doc.matrices.find(key);
    if (it == doc.matrices.end())
        throw InputError("matrix document: key '" + std::string(key) +
                         "' is required");
    return it->second;
}

} // namespace instab
