#pragma once

#include "mhaar/conditions.hpp"
#include "mhaar/cz.hpp"
#include "mhaar/expansion.hpp"
#include "mhaar/maximal.hpp"
#include "mhaar/realline.hpp"
#include "mhaar/unconditional.hpp"

#include "json.hpp"

#include <string>

namespace mhaar::io {

using Json = nlohmann::json;

const char* version();

// Deterministic text: keys sorted, doubles with 17 significant digits.
std::string dump(const Json& j, int indent = 2);

Json rational(const Rational& q);
Json quantity(const Quantity& q); // "a/b" | number | "Divergent"
Json segment(const Segment& s);   // ["lo", "hi"], infinite ends as "-inf" / "+inf"
Json point(const TaggedPoint& y);
Json step(const StepFunction& f, int m);
Json step(const RealStep& f, int m);

// {"m": int, "breakpoints": ["a/b", ...], "values": ["a/b", ...]}; m defaults to 2.
StepFunction step_from_json(const Json& j, int* m = nullptr);
StepFunction load_step(const std::string& path, int* m = nullptr);
Weight parse_weight(const std::string& spec);

Json to_json(const WeightReport& r);
Json to_json(const MinftyReport& r);
Json to_json(const ConjugateReport& r);
Json to_json(const RingRatioReport& r);
Json to_json(const DilationReport& r);
Json to_json(const TailReport& r);
Json to_json(const SingularityReport& r);
Json to_json(const MaximalFunction& M);
Json to_json(const Weak11Report& r);
Json to_json(const StrongLpReport& r);
Json to_json(const EquivalenceReport& r);
Json to_json(const CZResult& r);
Json to_json(const CZReport& r);
Json to_json(const SlopeInterval& s);
Json to_json(const DepthRatios& d, bool include_samples);
Json to_json(const SignFlipWeakReport& r);
Json to_json(const NormEquivalenceReport& r);
Json to_json(const PointedExperimentReport& r);
Json to_json(const ScaleSumReport& r);
Json to_json(const TranslatesReport& r);
Json to_json(const AnnihilatorReport& r);
Json to_json(const CMReport& r);
Json to_json(const HalfVerdict& r);
Json to_json(const BasisVerdict& r);
Json to_json(const HalflineReport& r);
Json to_json(const CompletenessResidual& r);
Json to_json(const Expansion<Rational>& e);
Json to_json(const Expansion<double>& e);

// JSON Schemas of the report documents, keyed by subcommand.
Json schemas();

} // namespace mhaar::io
