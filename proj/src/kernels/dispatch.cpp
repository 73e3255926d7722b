#include <cstdlib>
#include <string>

#include "pfd/kernels.hpp"

namespace pfd::kernels {

std::string_view name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "?";
}

std::vector<const KernelTable*> available() {
  std::vector<const KernelTable*> out{&scalar_table()};
  if (auto* t = detail::avx2_table(); t && detail::avx2_supported()) out.push_back(t);
  if (auto* t = detail::neon_table()) out.push_back(t);
  return out;
}

const KernelTable* find(Isa isa) {
  for (auto* t : available())
    if (t->isa == isa) return t;
  return nullptr;
}

namespace {

const KernelTable& select() {
  const auto tables = available();
  if (const char* forced = std::getenv("PFD_KERNELS")) {
    for (auto* t : tables)
      if (name(t->isa) == forced) return *t;
    throw Error(std::string("PFD_KERNELS=") + forced + " is not available on this machine");
  }
  return *tables.back();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace pfd::kernels
