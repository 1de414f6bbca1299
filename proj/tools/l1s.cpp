/**
 * Command-line front end: problem ingestion, decomposition export, solution
 * queries, path tracing, randomized validation, and figure-data export.
 *
 * Exit codes: 0 success, 1 failed validation property, 2 parse/usage error,
 * 3 rank-deficient input, 4 negative lambda, 5 figure export outside m = 2.
 */

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <l1s/decomposition.hpp>
#include <l1s/dual_polytope.hpp>
#include <l1s/exceptions.hpp>
#include <l1s/json_io.hpp>
#include <l1s/rational.hpp>
#include <l1s/solution_map.hpp>
#include <l1s/validate.hpp>

namespace {

using namespace l1s;

Json readJsonFile(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseException("cannot open input file: " + path);
    try
    {
        return Json::parse(in);
    }
    catch (const Json::parse_error& e)
    {
        throw ParseException(std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

int writeText(const std::string& text, const std::string& path)
{
    if (path.empty())
    {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path);
    if (!out)
    {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return 2;
    }
    out << text;
    return 0;
}

int writeJson(const Json& j, const std::string& path)
{
    return writeText(j.dump(2) + "\n", path);
}

/// Builds the decomposition from either a problem file or a previously
/// exported decomposition; a cached decomposition is verified against a
/// fresh rebuild so stale or edited caches cannot poison downstream queries.
Decomposition loadDecomposition(const std::string& path)
{
    const Json j = readJsonFile(path);
    const bool cached = j.contains("faces");
    const MatrixXr A = cached ? matrixFromDecompositionJson(j) : parseProblemJson(j).A;
    Decomposition dec = buildDecomposition(buildDualPolytope(A));
    if (cached && !decompositionMatchesJson(dec, j))
        throw ParseException("cached decomposition in " + path +
                             " does not match a fresh rebuild");
    return dec;
}

/// Parses "lambda,b1,...,bm" into a parameter point.
ParamPoint parseParamPoint(const std::string& text, Eigen::Index m, const char* flag)
{
    const VectorXr v = parseRationalVector(text);
    if (v.size() != m + 1)
        throw ParseException(std::string(flag) + " needs 1 + m = " +
                             std::to_string(m + 1) + " comma-separated rationals");
    return {v(0), VectorXr(v.tail(m))};
}

std::string joinOneBased(const std::vector<int>& idx)
{
    std::string out;
    for (std::size_t i = 0; i < idx.size(); ++i)
    {
        if (i > 0)
            out += ",";
        out += std::to_string(idx[i] + 1);
    }
    return out.empty() ? "-" : out;
}

/// Human-readable per-cell summary of a decomposition, one row per face:
/// sign partition, extreme points, dimension, independence flag, generator
/// count after redundancy removal, and the certified Lipschitz constant.
void printSummary(const Decomposition& dec, std::ostream& os)
{
    const std::vector<VectorXr>& vertices = dec.polytope().vertexList();
    os << "A is " << dec.A().rows() << " x " << dec.A().cols() << ", "
       << vertices.size() << " dual vertices, " << dec.cells().size()
       << " cells\n";
    os << std::left << std::setw(5) << "cell" << std::setw(12) << "plus"
       << std::setw(12) << "zero" << std::setw(12) << "minus" << std::setw(14)
       << "vertices" << std::setw(5) << "dim" << std::setw(5) << "F0"
       << std::setw(6) << "gens" << "kappa\n";
    for (const DecompositionCell& cell : dec.cells())
    {
        const Face& face = cell.face;
        std::vector<int> vertexIds;
        for (const VectorXr& v : face.vertices)
            for (std::size_t k = 0; k < vertices.size(); ++k)
                if (vertices[k] == v)
                {
                    vertexIds.push_back(static_cast<int>(k));
                    break;
                }
        std::ostringstream kappa;
        if (cell.lipschitz.has_value())
            kappa << std::setprecision(10) << *cell.lipschitz;
        else
            kappa << "-";
        os << std::left << std::setw(5) << cell.id << std::setw(12)
           << joinOneBased(face.partition.plus) << std::setw(12)
           << joinOneBased(face.partition.zero) << std::setw(12)
           << joinOneBased(face.partition.minus) << std::setw(14)
           << joinOneBased(vertexIds) << std::setw(5) << face.dim << std::setw(5)
           << (face.inF0 ? "yes" : "no") << std::setw(6) << cell.dGenerators.size()
           << kappa.str() << "\n";
    }
}

/// Worker budget: all hardware threads, capped by L1S_THREADS when set.
int threadBudget()
{
    const unsigned hw = std::thread::hardware_concurrency();
    int budget = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("L1S_THREADS"))
    {
        const int cap = std::atoi(env);
        if (cap >= 1)
            budget = std::min(budget, cap);
    }
    return budget;
}

}   // anonymous namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact polyhedral analysis of the solution sets of "
                 "l1-regularized least squares and basis pursuit"};
    app.require_subcommand(1);

    std::string input, output, lambdaStr, bStr, fromStr, toStr, dimsStr, fixture;
    unsigned seed = 42;
    int trials = 200;

    CLI::App* analyze =
        app.add_subcommand("analyze", "Decompose the parameter space of a problem");
    analyze->add_option("-i,--input", input, "problem JSON")->required();
    analyze->add_option("-o,--output", output, "decomposition JSON (stdout if omitted)");

    CLI::App* eval = app.add_subcommand(
        "eval", "Evaluate the full solution set at a parameter point");
    eval->add_option("-i,--input", input, "problem or cached decomposition JSON")
        ->required();
    eval->add_option("--lambda", lambdaStr, "regularization weight (rational)")
        ->required();
    eval->add_option("--b", bStr, "observation vector, comma-separated rationals")
        ->required();
    eval->add_option("-o,--output", output, "solution JSON (stdout if omitted)");

    CLI::App* locateCmd =
        app.add_subcommand("locate", "List the cells containing a parameter point");
    locateCmd->add_option("-i,--input", input, "problem or cached decomposition JSON")
        ->required();
    locateCmd->add_option("--lambda", lambdaStr, "regularization weight (rational)")
        ->required();
    locateCmd->add_option("--b", bStr, "observation vector, comma-separated rationals")
        ->required();
    locateCmd->add_option("-o,--output", output, "cell id JSON array (stdout if omitted)");

    CLI::App* check = app.add_subcommand(
        "check", "Report the uniqueness/linearity conditions at a parameter point");
    check->add_option("-i,--input", input, "problem or cached decomposition JSON")
        ->required();
    check->add_option("--lambda", lambdaStr, "regularization weight (rational)")
        ->required();
    check->add_option("--b", bStr, "observation vector, comma-separated rationals")
        ->required();
    check->add_option("-o,--output", output, "condition JSON (stdout if omitted)");

    CLI::App* lipschitz = app.add_subcommand(
        "lipschitz", "Certified per-cell Lipschitz constants plus a sampled estimate");
    lipschitz->add_option("-i,--input", input, "problem or cached decomposition JSON")
        ->required();
    lipschitz->add_option("--trials", trials, "sample pair budget (default 200)");
    lipschitz->add_option("--seed", seed, "sampling seed (default 42)");
    lipschitz->add_option("-o,--output", output, "JSON (stdout if omitted)");

    CLI::App* trace = app.add_subcommand(
        "trace", "Trace the solution along a segment between two parameter points");
    trace->add_option("-i,--input", input, "problem or cached decomposition JSON")
        ->required();
    trace->add_option("--from", fromStr, "start point lambda,b1,...,bm")->required();
    trace->add_option("--to", toStr, "end point lambda,b1,...,bm")->required();
    trace->add_option("-o,--output", output, "trace CSV (stdout if omitted)");

    CLI::App* validate = app.add_subcommand(
        "validate", "Randomized end-to-end validation against numerical oracles");
    validate->add_option("--seed", seed, "base seed (default 42)");
    validate->add_option("--trials", trials, "number of random instances (default 200)");
    validate->add_option("--dims", dimsStr, "upper bounds m,n (default 3,6)");
    validate->add_option("--fixture", fixture,
                         "verify a decomposition JSON against a fresh rebuild instead "
                         "of running random trials");
    validate->add_option("-o,--output", output, "report JSON (stdout if omitted)");

    CLI::App* exportFig = app.add_subcommand(
        "export-fig", "Export unit directions and boundary clouds for 3-D plotting");
    exportFig->add_option("-i,--input", input, "problem or cached decomposition JSON")
        ->required();
    exportFig->add_option("-o,--output", output, "figure JSON (stdout if omitted)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return 2;
    }

    try
    {
        if (analyze->parsed())
        {
            const Json j = readJsonFile(input);
            const Problem problem = parseProblemJson(j);
            const Decomposition dec = buildDecomposition(buildDualPolytope(problem.A));
            printSummary(dec, std::cerr);
            return writeJson(decompositionToJson(dec), output);
        }

        if (eval->parsed())
        {
            const Decomposition dec = loadDecomposition(input);
            const Rational lambda = parseRational(lambdaStr);
            const VectorXr b = parseRationalVector(bStr);
            SolutionSet sol = solve(dec, lambda, b);
            return writeJson(solutionToJson(sol), output);
        }

        if (locateCmd->parsed())
        {
            const Decomposition dec = loadDecomposition(input);
            return writeJson(
                locateToJson(locate(dec, parseRational(lambdaStr),
                                    parseRationalVector(bStr))),
                output);
        }

        if (check->parsed())
        {
            const Decomposition dec = loadDecomposition(input);
            const ConditionReport report =
                checkConditions(dec, parseRational(lambdaStr), parseRationalVector(bStr));
            return writeJson(conditionsToJson(report), output);
        }

        if (lipschitz->parsed())
        {
            if (trials <= 0)
            {
                std::cerr << "error: --trials must be positive\n";
                return 2;
            }
            const Decomposition dec = loadDecomposition(input);
            Json cells = Json::array();
            for (const DecompositionCell& cell : dec.cells())
                cells.push_back(Json{{"id", cell.id},
                                     {"lipschitz", cell.lipschitz.has_value()
                                                       ? Json(*cell.lipschitz)
                                                       : Json(nullptr)}});
            const LipschitzEstimate est = lipschitzEstimate(dec, trials, seed);
            return writeJson(Json{{"cells", std::move(cells)},
                                  {"estimate", Json{{"value", est.value},
                                                    {"samples", trials},
                                                    {"seed", seed}}}},
                             output);
        }

        if (trace->parsed())
        {
            const Decomposition dec = loadDecomposition(input);
            const Eigen::Index m = dec.A().rows();
            const ParamPoint p0 = parseParamPoint(fromStr, m, "--from");
            const ParamPoint p1 = parseParamPoint(toStr, m, "--to");
            std::vector<PathSegment> segments = tracePath(dec, p0, p1);
            return writeText(traceToCsv(segments), output);
        }

        if (validate->parsed())
        {
            if (!fixture.empty())
            {
                const Json j = readJsonFile(fixture);
                const MatrixXr A = matrixFromDecompositionJson(j);
                const Decomposition dec = buildDecomposition(buildDualPolytope(A));
                const bool ok = decompositionMatchesJson(dec, j);
                const int rc = writeJson(Json{{"fixture", fixture}, {"pass", ok}}, output);
                if (rc != 0)
                    return rc;
                if (!ok)
                    std::cerr << "validation failed: fixture does not match a fresh "
                                 "rebuild\n";
                return ok ? 0 : 1;
            }
            if (trials <= 0)
            {
                std::cerr << "error: --trials must be positive\n";
                return 2;
            }
            ValidationOptions opt;
            opt.seed = seed;
            opt.trials = trials;
            if (!dimsStr.empty())
            {
                int m = 0, n = 0;
                char comma = 0;
                std::istringstream dims(dimsStr);
                if (!(dims >> m >> comma >> n) || comma != ',' || m < 2 || n < 3)
                {
                    std::cerr << "error: --dims expects m,n with m >= 2, n >= 3\n";
                    return 2;
                }
                opt.maxM = m;
                opt.maxN = n;
            }
            opt.threads = threadBudget();
            const ValidationReport report = runValidation(opt);
            const int rc = writeJson(validationReportToJson(report), output);
            if (rc != 0)
                return rc;
            if (!report.allPass())
            {
                for (const TrialResult& t : report.trials)
                    if (!t.pass)
                    {
                        std::cerr << "validation failed: trial seed " << t.seed << ": "
                                  << t.detail << "\n";
                        break;
                    }
                return 1;
            }
            return 0;
        }

        if (exportFig->parsed())
        {
            const Decomposition dec = loadDecomposition(input);
            if (dec.A().rows() != 2)
            {
                std::cerr << "error: figure export is defined for m = 2 only (the "
                             "parameter space must be 3-dimensional)\n";
                return 5;
            }
            return writeJson(figureToJson(dec), output);
        }
    }
    catch (const RankDeficientException& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    catch (const NegativeLambdaException& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    catch (const ParseException& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    return 2;
}
