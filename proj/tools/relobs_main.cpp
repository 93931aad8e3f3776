#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <relobs/relobs.hpp>

namespace {

using namespace relobs;

std::string readFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<double> parseDoubleList(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ParseError("expected a comma-separated number list, got '" + text + "'");
    }
  }
  if (out.empty()) throw ParseError("empty number list");
  return out;
}

std::array<Rational, 3> parseRationalVector(const std::string& text) {
  std::array<Rational, 3> out{};
  std::stringstream ss(text);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 3) throw ParseError("momentum vector has at most three components");
    out[i++] = parseRational(item);
  }
  return out;
}

Json invarianceJson(const InvarianceReport& r) {
  return Json{{"invariant", r.invariant}, {"residual", toString(r.residual)}};
}

void writeCsvFile(const std::string& path, const std::vector<std::string>& header,
                  const std::vector<std::vector<double>>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw NumericalError("cannot write CSV file '" + path + "'");
  writeCsv(f, header, rows);
}

struct Invocation {
  std::string commandEcho;
  std::string inputBlob;
  Json payload;
  bool produced = false;
};

}  // namespace

int main(int argc, char** argv) {
  auto start = std::chrono::steady_clock::now();
  Invocation run;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) run.commandEcho += " ";
    run.commandEcho += argv[i];
  }
  run.inputBlob = run.commandEcho;

  CLI::App app{"symbolic and grid diagnostics for few-body observables"};
  app.require_subcommand(1);

  // classify
  auto* classifyCmd = app.add_subcommand("classify", "symmetry verdict for an operator expression");
  std::string classifySystem, classifyExpr;
  bool noRotations = false;
  classifyCmd->add_option("--system", classifySystem, "system JSON document")->required();
  classifyCmd->add_option("--expr", classifyExpr, "operator expression")->required();
  classifyCmd->add_flag("--no-rotations", noRotations, "skip the rotation generator");
  classifyCmd->callback([&] {
    std::string sysText = readFile(classifySystem);
    run.inputBlob += '\0' + sysText + '\0' + classifyExpr;
    ParticleSystem sys = loadSystem(Json::parse(sysText));
    OperatorPoly op = parseAndLower(classifyExpr, sys);
    PhysicalityVerdict v;
    if (noRotations || sys.dim < 2) {
      v.perGenerator["translation"] = checkInvariance(op, translationAction(sys));
      v.perGenerator["boost"] = checkInvariance(op, boostAction(sys));
      v.isPhysical = v.perGenerator["translation"].invariant && v.perGenerator["boost"].invariant;
    } else {
      v = classify(op, sys);
    }
    Json per;
    for (const auto& [name, rep] : v.perGenerator) per[name] = invarianceJson(rep);
    run.payload = {{"expression", classifyExpr},
                   {"canonical", toString(op)},
                   {"perGenerator", per},
                   {"isPhysical", v.isPhysical}};
    run.produced = true;
  });

  // reduce
  auto* reduceCmd = app.add_subcommand("reduce", "rewrite an operator in frame-map coordinates");
  std::string reduceSystem, reduceMap = "jacobi", reduceExpr, sectorMomentum = "0";
  reduceCmd->add_option("--system", reduceSystem, "system JSON document")->required();
  reduceCmd->add_option("--map", reduceMap, "'jacobi' or a frame-map JSON document");
  reduceCmd->add_option("--expr", reduceExpr, "operator expression")->required();
  reduceCmd->add_option("--sector-momentum", sectorMomentum,
                        "rest-frame momentum, comma-separated rationals");
  reduceCmd->callback([&] {
    std::string sysText = readFile(reduceSystem);
    run.inputBlob += '\0' + sysText + '\0' + reduceExpr + '\0' + sectorMomentum;
    ParticleSystem sys = loadSystem(Json::parse(sysText));
    OperatorPoly op = parseAndLower(reduceExpr, sys);
    LinearFrameMap map = [&] {
      if (reduceMap == "jacobi") return jacobiMap(sys);
      std::string mapText = readFile(reduceMap);
      run.inputBlob += '\0' + mapText;
      LinearFrameMap m = loadFrameMap(Json::parse(mapText), sys.dim);
      if (m.system().masses != sys.masses)
        throw FrameMapError("frame-map masses disagree with the system document");
      return m;
    }();
    ReducedOperator r = applyFrameMap(op, map);
    std::array<Rational, 3> q = parseRationalVector(sectorMomentum);
    OperatorPoly projected = projectCM(r, q);
    std::string qText;
    for (int ax = 0; ax < sys.dim; ++ax) {
      if (ax) qText += ",";
      qText += toString(q[ax]);
    }
    run.payload = {{"expression", reduceExpr},
                   {"canonical", toString(op)},
                   {"mapped", toString(r.expr)},
                   {"cmDependence", toString(r.cmDependence)},
                   {"projected", toString(projected)},
                   {"note", "P_cm -> (" + qText + ") applied"},
                   {"frameMap", saveFrameMap(map)}};
    run.produced = true;
  });

  // invariants
  auto* invCmd = app.add_subcommand("invariants", "rotational-invariant internal basis");
  std::string invSystem;
  int invDegree = 2;
  invCmd->add_option("--system", invSystem, "system JSON document")->required();
  invCmd->add_option("--degree", invDegree, "2 for dots, 3 to add triple products")
      ->check(CLI::IsMember({2, 3}));
  invCmd->callback([&] {
    std::string sysText = readFile(invSystem);
    run.inputBlob += '\0' + sysText + '\0' + std::to_string(invDegree);
    ParticleSystem sys = loadSystem(Json::parse(sysText));
    if (sys.dim != 3) throw DimensionError("the invariant basis needs dimension 3");
    if (sys.count() < 2) throw DimensionError("no internal vectors for a single particle");
    std::vector<int> internals;
    for (int i = 1; i < sys.count(); ++i) internals.push_back(i);
    std::vector<OperatorPoly> basis = rotationalInvariantBasis(internals, invDegree);
    Json list = Json::array();
    for (const auto& b : basis) list.push_back(toString(b));
    run.payload = {{"degree", invDegree}, {"internalVectors", internals}, {"basis", list}};
    run.produced = true;
  });

  // modes
  auto* modesCmd = app.add_subcommand("modes", "harmonic normal modes and the acoustic sum rule");
  std::string modesModel, modesCsv;
  modesCmd->add_option("--model", modesModel, "harmonic model JSON document")->required();
  modesCmd->add_option("--csv", modesCsv, "write frequencies CSV to this path");
  modesCmd->callback([&] {
    std::string text = readFile(modesModel);
    run.inputBlob += '\0' + text;
    HarmonicModel hm = loadHarmonicModel(Json::parse(text));
    NormalModes nm = normalModes(hm);
    NormalModes kept = removeAcousticModes(nm);
    int zeros = static_cast<int>(nm.frequencies.size() - kept.frequencies.size());
    run.payload = {{"frequencies", nm.frequencies},
                   {"zeroModes", zeros},
                   {"acousticRemoved", zeros},
                   {"remaining", kept.frequencies},
                   {"asrEnforced", hm.asrEnforced}};
    if (!modesCsv.empty()) {
      std::vector<std::vector<double>> rows;
      for (double f : nm.frequencies) rows.push_back({f});
      writeCsvFile(modesCsv, {"frequency"}, rows);
    }
    run.produced = true;
  });

  // spectrum
  auto* specCmd = app.add_subcommand("spectrum", "grid eigenvalues, full sector or reduced");
  std::string specModel, specVariant = "reduced", specCsv;
  int specSector = 0, specCount = 0;
  specCmd->add_option("--model", specModel, "grid model JSON document")->required();
  specCmd->add_option("--variant", specVariant, "full or reduced")
      ->check(CLI::IsMember({"full", "reduced"}));
  specCmd->add_option("--sector", specSector, "total-momentum sector (full variant)");
  specCmd->add_option("--count", specCount, "eigenvalue count (default: solver count)");
  specCmd->add_option("--csv", specCsv, "write eigenvalues CSV to this path");
  specCmd->callback([&] {
    std::string text = readFile(specModel);
    run.inputBlob += '\0' + text + '\0' + specVariant + '\0' + std::to_string(specSector);
    GridModel model = loadGridModel(Json::parse(text));
    int count = specCount > 0 ? specCount : model.solverCount;
    SpectrumResult res = specVariant == "full" ? fullGridSpectrum(model, specSector, count)
                                               : reducedGridSpectrum(model, count);
    run.payload = {{"sectorLabel", res.sectorLabel},
                   {"eigenvalues", res.eigenvalues},
                   {"metadata", res.metadata}};
    if (specVariant == "reduced" && model.count() == 2) {
      BoundStateReport b = boundStateReport(model);
      run.payload["boundState"] = {{"fraction", b.fraction}, {"bound", b.bound}};
    }
    if (!specCsv.empty()) {
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < res.eigenvalues.size(); ++i)
        rows.push_back({static_cast<double>(i), res.eigenvalues[i]});
      writeCsvFile(specCsv, {"index", "eigenvalue"}, rows);
    }
    run.produced = true;
  });

  // scaling
  auto* scalingCmd = app.add_subcommand("scaling", "finite-size exponents of the sector ladder");
  std::string scalingModel, scalingLengths;
  scalingCmd->add_option("--model", scalingModel, "grid model JSON document")->required();
  scalingCmd->add_option("--lengths", scalingLengths, "comma-separated box lengths")->required();
  scalingCmd->callback([&] {
    std::string text = readFile(scalingModel);
    run.inputBlob += '\0' + text + '\0' + scalingLengths;
    GridModel model = loadGridModel(Json::parse(text));
    ScalingResult res = cmLadderScaling(model, parseDoubleList(scalingLengths));
    run.payload = {{"lengths", res.lengths},
                   {"cmSpacings", res.cmSpacings},
                   {"internalGaps", res.internalGaps},
                   {"cmExponent", res.cmExponent},
                   {"internalExponent", res.internalExponent}};
    run.produced = true;
  });

  // bo
  auto* boCmd = app.add_subcommand("bo", "clamped-heavy accuracy against the exact internal solve");
  std::string boModel, boRatios, boCsv;
  boCmd->add_option("--model", boModel, "three-particle grid model JSON document")->required();
  boCmd->add_option("--mass-ratios", boRatios, "comma-separated heavy/light ratios")->required();
  boCmd->add_option("--csv", boCsv, "write the accuracy table CSV to this path");
  boCmd->callback([&] {
    std::string text = readFile(boModel);
    run.inputBlob += '\0' + text + '\0' + boRatios;
    GridModel model = loadGridModel(Json::parse(text));
    Json rows = Json::array();
    std::vector<std::vector<double>> csvRows;
    for (double ratio : parseDoubleList(boRatios)) {
      BOResult r = boSolve(model, ratio);
      double eBO = r.nuclearLevels.at(0);
      double eExact = r.exactLevels.at(0);
      double err = std::abs(eBO - eExact);
      rows.push_back({{"ratio", ratio},
                      {"eBO", eBO},
                      {"eExact", eExact},
                      {"absError", err},
                      {"relError", err / std::abs(eExact)}});
      csvRows.push_back({ratio, eBO, eExact, err});
    }
    run.payload = {{"rows", rows}};
    if (!boCsv.empty()) writeCsvFile(boCsv, {"ratio", "eBO", "eExact", "absError"}, csvRows);
    run.produced = true;
  });

  // spectral-function
  auto* sfCmd = app.add_subcommand("spectral-function", "Lehmann spectral density on the omega grid");
  std::string sfModel, sfVariant = "reduced", sfProbe = "rel-position", sfCsv;
  double sfEta = 0, sfOmegaMax = 0, sfRatio = 0;
  sfCmd->add_option("--model", sfModel, "grid model JSON document")->required();
  sfCmd->add_option("--variant", sfVariant, "unreduced, reduced, or bo")
      ->check(CLI::IsMember({"unreduced", "reduced", "bo"}));
  sfCmd->add_option("--probe", sfProbe, "rel-position, abs-position, or heavy-separation")
      ->check(CLI::IsMember({"rel-position", "abs-position", "heavy-separation"}));
  sfCmd->add_option("--eta", sfEta, "Gaussian broadening (default: omega-max / 100)");
  sfCmd->add_option("--omega-max", sfOmegaMax, "upper edge of the omega window")->required();
  sfCmd->add_option("--mass-ratio", sfRatio, "heavy/light ratio override for the bo variant");
  sfCmd->add_option("--csv", sfCsv, "write the (omega, A) CSV to this path");
  sfCmd->callback([&] {
    std::string text = readFile(sfModel);
    run.inputBlob += '\0' + text + '\0' + sfVariant + '\0' + sfProbe;
    GridModel model = loadGridModel(Json::parse(text));
    SpectralVariant variant = sfVariant == "unreduced" ? SpectralVariant::Unreduced
                              : sfVariant == "bo"      ? SpectralVariant::BO
                                                       : SpectralVariant::Reduced;
    ProbeKind probe = sfProbe == "abs-position"       ? ProbeKind::AbsPosition
                      : sfProbe == "heavy-separation" ? ProbeKind::HeavySeparation
                                                      : ProbeKind::RelPosition;
    SpectralFunction sf = spectralFunction(model, variant, probe, sfEta, sfOmegaMax, sfRatio);
    Json transitions = Json::array();
    for (const auto& [w, wt] : sf.transitions) transitions.push_back({w, wt});
    run.payload = {{"variant", sf.variant},
                   {"probe", sf.probe},
                   {"eta", sf.eta},
                   {"omegaMax", sf.omegaMax},
                   {"gridPoints", sf.omega.size()},
                   {"totalWeight", sf.totalWeight},
                   {"sumRuleError", sf.sumRuleError},
                   {"transitions", transitions}};
    if (!sfCsv.empty()) {
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < sf.omega.size(); ++i)
        rows.push_back({sf.omega[i], sf.weights[i]});
      writeCsvFile(sfCsv, {"omega", "A"}, rows);
    }
    run.produced = true;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    Json err = {{"error", {{"type", "usage"}, {"message", e.what()}, {"exitCode", 2}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const ParseError& e) {
    Json err = {{"error",
                 {{"type", "parse"},
                  {"message", e.what()},
                  {"line", e.line},
                  {"column", e.column},
                  {"exitCode", 2}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    Json err = {{"error", {{"type", "parse"}, {"message", e.what()}, {"exitCode", 2}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    Json err = {{"error", {{"type", "validation"}, {"message", e.what()}, {"exitCode", 3}}}};
    std::cerr << err.dump() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    Json err = {{"error", {{"type", "numerical"}, {"message", e.what()}, {"exitCode", 4}}}};
    std::cerr << err.dump() << "\n";
    return 4;
  } catch (const std::exception& e) {
    Json err = {{"error", {{"type", "internal"}, {"message", e.what()}, {"exitCode", 4}}}};
    std::cerr << err.dump() << "\n";
    return 4;
  }

  if (run.produced) {
    std::cout << runReport(run.commandEcho, run.inputBlob, run.payload).dump(2) << "\n";
    auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    std::cerr << "elapsed_ms=" << elapsed.count() << "\n";
  }
  return 0;
}
