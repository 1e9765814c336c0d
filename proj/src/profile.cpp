#include "laxbench/profile.hpp"

namespace laxbench {

ProfileKind parse_profile_kind(const std::string& name) {
  if (name == "beauville") return ProfileKind::beauville;
  if (name == "bullet") return ProfileKind::bullet;
  if (name == "bv") return ProfileKind::bv;
  if (name == "uniform") return ProfileKind::uniform;
  throw InputError("unknown profile kind '" + name + "'");
}

}  // namespace laxbench
