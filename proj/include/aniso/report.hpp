#pragma once

#include "aniso/cancellation.hpp"
#include "aniso/experiments.hpp"

#include <json.hpp>

#include <string>

namespace aniso {

using Json = nlohmann::ordered_json;

/// Uniform report envelope emitted by every CLI command. JSON carries full
/// precision; the text rendering rounds to 6 significant digits.
struct Report {
  int schema_version = 1;
  std::string command;
  std::string status = "ok";  // ok | failed | ill-conditioned
  long seed = 0;
  Json params = Json::object();
  Json results = Json::object();
  std::vector<std::string> flags;

  Json to_json() const;
  std::string to_text() const;
};

Json complex_json(Complex z);
Json to_json(const CancellationReport& r);
Json to_json(const MikhlinReport& r);
Json to_json(const DiniReport& r);
Json to_json(const KernelFtReport& r);
Json to_json(const EmbeddingReport& r);
Json to_json(const std::vector<NearDeltaRow>& rows);
Json to_json(const BilinearizationReport& r);
Json to_json(const HolderEstimate& r);
Json to_json(const LinearFit& r);

}  // namespace aniso
