#pragma once

#include <json.hpp>

#include "fflab/splitting.hpp"
#include "fflab/ultrakit.hpp"

// JSON views of library results. Keys keep insertion order so that output is
// byte-stable; polynomials are printed in the library text formats.
namespace fflab::report {

using Json = nlohmann::ordered_json;

Json to_json(const Factorization& f, const Field& field);
Json to_json(const IrreducibilityCertificate& c);
Json to_json(const FactorBoundReport& r);
Json to_json(const CarlitzImage& c);
Json to_json(const CyclotomicField& c);
Json to_json(const KummerWitness& w);
Json to_json(const RnDegree& r);
Json to_json(const SplittingData& d);
Json to_json(const KummerSplitting& k);
Json to_json(const GeometricReport& g);
Json to_json(const SplitTableRow& r);

namespace u = fflab::ultra;
Json to_json(const u::Truncation& t);
Json to_json(const u::Hyperinteger& h);
Json to_json(const u::TailReport& r);
Json to_json(const u::UnionMember& m);
Json to_json(const u::UltraFieldFamily& f);
Json to_json(const u::GuardResult& g);
Json to_json(const u::TransferReport& r);
Json to_json(const u::GaloisDescriptor& d);
Json to_json(const u::ShadowFamily& s);
Json to_json(const u::ArtinSchreierReport& r);
Json to_json(const u::TowerReport& r);
Json to_json(const u::RamificationReport& r);
Json to_json(const u::MaeReport& r);

std::string to_string(Irreducibility v);

}  // namespace fflab::report
