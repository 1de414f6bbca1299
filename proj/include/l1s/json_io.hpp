/**
 * JSON and CSV serialization for every file format the tool reads or
 * writes: problem files, decomposition exports, solution sets, condition
 * reports, traced paths, and figure data.  Rationals travel as strings
 * ("3/4"), never as floats; serialization is canonical so identical inputs
 * produce byte-identical outputs.
 */

#ifndef L1S_JSON_IO_HPP
#define L1S_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "decomposition.hpp"
#include "rational.hpp"
#include "solution_map.hpp"

namespace l1s {

using Json = nlohmann::json;

struct Problem
{
    MatrixXr A;
    std::string label;   // empty when absent
};

/// Array of rational strings <-> vector.
Json ratVectorToJson(const VectorXr& v);
VectorXr ratVectorFromJson(const Json& j);

/// Array of row arrays of rational strings <-> matrix.
Json matrixToJson(const MatrixXr& A);
MatrixXr matrixFromJson(const Json& j);

/// { "A": [[...]], "label": optional string }
/// @throws ParseException on malformed input.
Problem parseProblemJson(const Json& j);
Json problemToJson(const Problem& p);

/**
 * Full decomposition export: the matrix, the polytope vertex list, and per
 * face its partition (1-based indices), vertex references, dimension,
 * independent-columns flag, irredundant generators, and Lipschitz constant
 * (null where no closed form exists).
 */
Json decompositionToJson(const Decomposition& dec);

/// The matrix stored in a decomposition export.
/// @throws ParseException on malformed input.
MatrixXr matrixFromDecompositionJson(const Json& j);

/// Does the export match this decomposition exactly?  Used to vet cached
/// decompositions against a fresh rebuild before trusting them.
bool decompositionMatchesJson(const Decomposition& dec, const Json& j);

/// {"kind":"unique","x":[...]} or
/// {"kind":"polytope","vertices":[...],"equalities":[...],"inequalities":[...]};
/// fills the vertex list of polytopal sets as a side effect.
Json solutionToJson(SolutionSet& set);

Json locateToJson(const std::vector<int>& ids);

/// Keys cond31/cond32/cond33 carry the three nested certificate conditions
/// from weakest to strongest; active_J is 1-based.
Json conditionsToJson(const ConditionReport& report);

/// CSV with header theta_in,theta_out,cell_id,solution_in,solution_out;
/// solution columns list vertices separated by '|' with space-separated
/// components.  Fills endpoint vertex lists as a side effect.
std::string traceToCsv(std::vector<PathSegment>& segments);

/**
 * Figure data for the 3-dimensional parameter space (m = 2 only): per cell
 * the unit-normalized extreme directions and the boundary outline of
 * D_F intersected with the unit sphere, found by grid-sampled exact
 * membership.
 *
 * @throws std::invalid_argument when m != 2.
 */
Json figureToJson(const Decomposition& dec);

}   // namespace l1s

#endif
