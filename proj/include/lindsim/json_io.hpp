#ifndef LINDSIM_JSON_IO_HPP
#define LINDSIM_JSON_IO_HPP

#include <string>
#include <variant>

#include "lindsim/applications.hpp"
#include "lindsim/nff.hpp"
#include "lindsim/product_formula.hpp"

namespace lindsim {

// A model file carries exactly one of: operator-form Lindblad data,
// one-triangle GKS entries, or one of the class specs.
using ClassSpec = std::variant<IdenticalCoordinateSpec, DiagonalSpec, DenseDiagonalSpec,
                               OneKetSparseSpec, SparseLindbladOpSpec>;

struct ModelFile {
    std::variant<LindbladModel, OvercompleteGKS, ClassSpec> payload;

    Superoperator generator() const;
    int dim() const;
    bool is_class() const { return std::holds_alternative<ClassSpec>(payload); }
};

ModelFile load_model_file(const std::string& path);
ModelFile parse_model_json(const std::string& text);

SparsityPattern load_pattern_file(const std::string& path);
WalkSpec load_graph_file(const std::string& path);

// Serialization helpers. All numbers are printed with 17 significant digits
// so doubles round-trip exactly.
std::string format_double(double v);
std::string channel_to_json(const QuantumChannel& e);
std::string matrix_to_json(const ComplexMatrix& m);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace lindsim

#endif
