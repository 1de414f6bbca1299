#include "l1s/json_io.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "l1s/exceptions.hpp"

namespace l1s {

namespace {

Rational parseRationalField(const Json& j, const char* context)
{
    if (!j.is_string())
        throw ParseException(std::string(context) + ": rational values must be strings");
    return parseRational(j.get<std::string>());
}

}   // anonymous namespace

Json ratVectorToJson(const VectorXr& v)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(toString(v(i)));
    return out;
}

VectorXr ratVectorFromJson(const Json& j)
{
    if (!j.is_array())
        throw ParseException("expected an array of rational strings");
    VectorXr v(static_cast<Eigen::Index>(j.size()));
    Eigen::Index i = 0;
    for (const Json& entry : j)
        v(i++) = parseRationalField(entry, "vector entry");
    return v;
}

Json matrixToJson(const MatrixXr& A)
{
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < A.rows(); ++r)
        rows.push_back(ratVectorToJson(VectorXr(A.row(r).transpose())));
    return rows;
}

MatrixXr matrixFromJson(const Json& j)
{
    if (!j.is_array() || j.empty())
        throw ParseException("matrix must be a nonempty array of rows");
    const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
    if (cols == 0)
        throw ParseException("matrix rows must be nonempty arrays");
    MatrixXr A(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    Eigen::Index r = 0;
    for (const Json& row : j)
    {
        if (!row.is_array() || row.size() != cols)
            throw ParseException("matrix rows must all have the same length");
        Eigen::Index c = 0;
        for (const Json& entry : row)
            A(r, c++) = parseRationalField(entry, "matrix entry");
        ++r;
    }
    return A;
}

Problem parseProblemJson(const Json& j)
{
    if (!j.is_object() || !j.contains("A"))
        throw ParseException("problem file must be an object with an \"A\" matrix");
    Problem p;
    p.A = matrixFromJson(j.at("A"));
    if (j.contains("label"))
    {
        if (!j.at("label").is_string())
            throw ParseException("problem label must be a string");
        p.label = j.at("label").get<std::string>();
    }
    return p;
}

Json problemToJson(const Problem& p)
{
    Json j;
    j["A"] = matrixToJson(p.A);
    if (!p.label.empty())
        j["label"] = p.label;
    return j;
}

Json decompositionToJson(const Decomposition& dec)
{
    const DualPolytope& P = dec.polytope();
    Json j;
    j["A"] = matrixToJson(dec.A());
    Json verts = Json::array();
    for (const VectorXr& v : P.vertexList())
        verts.push_back(ratVectorToJson(v));
    j["vertices"] = verts;

    auto vertexIndex = [&P](const VectorXr& v) -> int
    {
        const std::vector<VectorXr>& list = P.vertexList();
        for (std::size_t i = 0; i < list.size(); ++i)
        {
            bool equal = list[i].size() == v.size();
            for (Eigen::Index k = 0; equal && k < v.size(); ++k)
                equal = list[i](k) == v(k);
            if (equal)
                return static_cast<int>(i) + 1;
        }
        throw std::logic_error("decomposition export: face vertex missing from vertex list");
    };
    auto oneBased = [](const std::vector<int>& idx)
    {
        Json out = Json::array();
        for (int i : idx)
            out.push_back(i + 1);
        return out;
    };

    Json faces = Json::array();
    for (const DecompositionCell& cell : dec.cells())
    {
        const Face& face = cell.face;
        Json f;
        f["id"] = face.id;
        f["plus"] = oneBased(face.partition.plus);
        f["zero"] = oneBased(face.partition.zero);
        f["minus"] = oneBased(face.partition.minus);
        Json fv = Json::array();
        for (const VectorXr& v : face.vertices)
            fv.push_back(vertexIndex(v));
        f["vertices"] = fv;
        f["dim"] = face.dim;
        f["in_F0"] = face.inF0;
        Json gens = Json::array();
        for (const VectorXr& g : cell.dGenerators)
            gens.push_back(ratVectorToJson(g));
        f["generators"] = gens;
        f["lipschitz"] = cell.lipschitz ? Json(*cell.lipschitz) : Json(nullptr);
        faces.push_back(std::move(f));
    }
    j["faces"] = faces;
    return j;
}

MatrixXr matrixFromDecompositionJson(const Json& j)
{
    if (!j.is_object() || !j.contains("A"))
        throw ParseException("decomposition file must be an object with an \"A\" matrix");
    return matrixFromJson(j.at("A"));
}

bool decompositionMatchesJson(const Decomposition& dec, const Json& j)
{
    return decompositionToJson(dec) == j;
}

Json solutionToJson(SolutionSet& set)
{
    Json j;
    if (set.kind == SolutionKind::Unique)
    {
        j["kind"] = "unique";
        j["x"] = ratVectorToJson(set.point);
        return j;
    }
    j["kind"] = "polytope";
    Json verts = Json::array();
    for (const VectorXr& v : solutionVertices(set))
        verts.push_back(ratVectorToJson(v));
    j["vertices"] = verts;
    auto constraintList = [](const std::vector<LinearConstraint>& rows)
    {
        Json out = Json::array();
        for (const LinearConstraint& c : rows)
        {
            Json entry;
            entry["coeff"] = ratVectorToJson(c.coeff);
            entry["rhs"] = toString(c.rhs);
            out.push_back(std::move(entry));
        }
        return out;
    };
    j["equalities"] = constraintList(set.hrep.equalities);
    j["inequalities"] = constraintList(set.hrep.inequalities);
    return j;
}

Json locateToJson(const std::vector<int>& ids)
{
    return Json(ids);
}

Json conditionsToJson(const ConditionReport& report)
{
    Json j;
    j["cond31"] = report.certificate;
    j["cond32"] = report.activeIndependent;
    j["cond33"] = report.strictCertificate;
    j["witness_x"] = ratVectorToJson(report.witnessX);
    j["witness_y"] = report.witnessY ? ratVectorToJson(*report.witnessY) : Json(nullptr);
    Json active = Json::array();
    for (int i : report.activeJ)
        active.push_back(i + 1);
    j["active_J"] = active;
    return j;
}

std::string traceToCsv(std::vector<PathSegment>& segments)
{
    auto solutionField = [](SolutionSet& set)
    {
        std::ostringstream out;
        bool firstVertex = true;
        for (const VectorXr& v : solutionVertices(set))
        {
            if (!firstVertex)
                out << '|';
            firstVertex = false;
            out << toString(v, " ");
        }
        return out.str();
    };
    std::ostringstream csv;
    csv << "theta_in,theta_out,cell_id,solution_in,solution_out\n";
    for (PathSegment& seg : segments)
    {
        csv << toString(seg.thetaIn) << ',' << toString(seg.thetaOut) << ',' << seg.cellId
            << ',' << solutionField(seg.solutionIn) << ',' << solutionField(seg.solutionOut)
            << '\n';
    }
    return csv.str();
}

Json figureToJson(const Decomposition& dec)
{
    if (dec.A().rows() != 2)
        throw std::invalid_argument("figure export is defined for m = 2 only");

    constexpr int kPolar = 40;     // lambda = cos(phi), phi in (0, pi/2)
    constexpr int kAzimuth = 160;  // b-plane angle, wraps around

    struct GridPoint
    {
        Rational lambda;
        VectorXr b;
        double coords[3];
    };
    std::vector<GridPoint> grid;
    grid.reserve(static_cast<std::size_t>(kPolar * kAzimuth));
    for (int i = 0; i < kPolar; ++i)
    {
        const double phi = (i + 0.5) / kPolar * (std::acos(0.0));   // pi/2
        for (int jAz = 0; jAz < kAzimuth; ++jAz)
        {
            const double psi = jAz * (4.0 * std::acos(0.0)) / kAzimuth;   // 2 pi
            GridPoint p;
            p.coords[0] = std::cos(phi);
            p.coords[1] = std::sin(phi) * std::cos(psi);
            p.coords[2] = std::sin(phi) * std::sin(psi);
            p.lambda = rationalFromDouble(p.coords[0]);
            p.b = VectorXr(2);
            p.b(0) = rationalFromDouble(p.coords[1]);
            p.b(1) = rationalFromDouble(p.coords[2]);
            grid.push_back(std::move(p));
        }
    }

    Json cells = Json::array();
    for (const DecompositionCell& cell : dec.cells())
    {
        Json entry;
        entry["id"] = cell.id;
        Json dirs = Json::array();
        for (const VectorXr& g : cell.dGenerators)
        {
            double norm = 0.0;
            for (Eigen::Index k = 0; k < g.size(); ++k)
                norm += toDouble(g(k)) * toDouble(g(k));
            norm = std::sqrt(norm);
            Json d = Json::array();
            for (Eigen::Index k = 0; k < g.size(); ++k)
                d.push_back(toDouble(g(k)) / norm);
            dirs.push_back(std::move(d));
        }
        entry["unit_directions"] = dirs;

        std::vector<bool> member(grid.size());
        for (std::size_t g = 0; g < grid.size(); ++g)
            member[g] = memberDF(dec, cell.id, grid[g].lambda, grid[g].b);

        auto at = [&](int i, int jAz) -> bool
        {
            if (i >= kPolar)
                return false;   // past the equator lambda goes negative
            if (i < 0)
            {
                // Over the pole: the mirrored azimuth cell.
                i = 0;
                jAz += kAzimuth / 2;
            }
            jAz = ((jAz % kAzimuth) + kAzimuth) % kAzimuth;
            return member[static_cast<std::size_t>(i * kAzimuth + jAz)];
        };
        Json boundary = Json::array();
        for (int i = 0; i < kPolar; ++i)
        {
            for (int jAz = 0; jAz < kAzimuth; ++jAz)
            {
                if (!at(i, jAz))
                    continue;
                const bool edge = !at(i - 1, jAz) || !at(i + 1, jAz) || !at(i, jAz - 1)
                                  || !at(i, jAz + 1);
                if (!edge)
                    continue;
                const GridPoint& p = grid[static_cast<std::size_t>(i * kAzimuth + jAz)];
                boundary.push_back(Json::array({p.coords[0], p.coords[1], p.coords[2]}));
            }
        }
        entry["boundary_points"] = boundary;
        cells.push_back(std::move(entry));
    }
    Json j;
    j["cells"] = cells;
    return j;
}

}   // namespace l1s
