#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hotplug/model.hpp"

namespace hotplug {

struct MdsUse {
  std::string name;
  gf::Matrix matrix;
  std::size_t k;  // every k rows must be independent
  bool vandermonde = false;  // consecutive nodes 1..rows, so MDS by construction
};

class Scheme {
 public:
  explicit Scheme(SystemParams params) : params_(std::move(params)) {}
  virtual ~Scheme() = default;

  virtual std::string name() const = 0;
  const SystemParams& params() const noexcept { return params_; }
  virtual TradeoffPoint declared_point() const = 0;
  // L: number of subfiles per file.
  virtual std::size_t subpacketization() const = 0;
  std::size_t file_length() const { return subpacketization() * params_.b_factor; }
  std::size_t width() const noexcept { return params_.b_factor; }
  virtual bool is_private() const { return false; }

  // All values of one user's secret, in a fixed order.
  virtual std::vector<UserSecret> secret_space() const { return {UserSecret{}}; }
  virtual UserSecret sample_secret(Rng&) const { return {}; }

  virtual Placement place(const FileLibrary& lib, const std::vector<UserSecret>& secrets) const = 0;
  virtual Transcript deliver(const Placement& placement, const FileLibrary& lib, const DemandVector& d) const = 0;
  // Uses only the user's cache, the broadcast and the public code description.
  virtual SymbolVector decode(std::size_t user, const UserCache& cache, const Transcript& x,
                              std::size_t demand) const = 0;

  virtual std::vector<MdsUse> mds_matrices() const { return {}; }

 protected:
  void check_library(const FileLibrary& lib) const;
  SystemParams params_;
};

std::vector<UserSecret> sample_secrets(const Scheme& scheme, Rng& rng);
std::vector<UserSecret> default_secrets(const Scheme& scheme);

struct SchemeEntry {
  std::string name;
  bool is_private;
  bool uses_t;
  std::string summary;
};

// Executable schemes; `vu(<inner>)` wraps any non-private entry.
const std::vector<SchemeEntry>& registered_schemes();
std::unique_ptr<Scheme> make_scheme(const std::string& name, const SystemParams& params);
// t values for which make_scheme succeeds structurally (field size not checked).
std::vector<std::size_t> valid_t(const std::string& name, const SystemParams& params);
bool scheme_uses_t(const std::string& name);

}  // namespace hotplug
