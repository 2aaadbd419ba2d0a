#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "qmod/rep.hpp"

namespace qmod {

namespace {

std::tuple<int, int, int, int, int> key_of(const BasisIndex& b, int component) {
  if (const auto* p = std::get_if<PodlesIndex>(&b)) return {0, p->k, p->sign, 0, component};
  if (const auto* p = std::get_if<BasicIndex>(&b)) return {1, p->k, p->l, 0, component};
  const auto& d = std::get<DlssvIndex>(b);
  return {2, d.j2, d.m2, 2 * d.n2 + (d.up ? 1 : 0), component};
}

std::string half(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

}  // namespace

std::string to_string(ModuleKind k) {
  switch (k) {
    case ModuleKind::podles: return "podles";
    case ModuleKind::suq2_basic: return "suq2-basic";
    case ModuleKind::suq2_dlssv: return "suq2-dlssv";
  }
  return "?";
}

ModuleKind parse_module_kind(const std::string& s) {
  if (s == "podles") return ModuleKind::podles;
  if (s == "suq2-basic" || s == "suq2_basic" || s == "basic") return ModuleKind::suq2_basic;
  if (s == "suq2-dlssv" || s == "suq2_dlssv" || s == "dlssv") return ModuleKind::suq2_dlssv;
  throw ConfigError("unknown module kind '" + s + "'");
}

std::string to_string(const BasisIndex& b) {
  std::ostringstream os;
  if (const auto* p = std::get_if<PodlesIndex>(&b)) {
    os << "e(" << p->k << (p->sign > 0 ? ",+)" : ",-)");
  } else if (const auto* p = std::get_if<BasicIndex>(&b)) {
    os << "e(" << p->k << "," << p->l << ")";
  } else {
    const auto& d = std::get<DlssvIndex>(b);
    os << "|" << half(d.j2) << "," << half(d.m2) << "," << half(d.n2) << (d.up ? ">up" : ">down");
  }
  return os.str();
}

std::string Window::to_string(ModuleKind k) const {
  std::ostringstream os;
  switch (k) {
    case ModuleKind::podles: os << "N=" << N; break;
    case ModuleKind::suq2_basic: os << "N=" << N << ",L=" << L; break;
    case ModuleKind::suq2_dlssv: os << "Jmax=" << half(jmax2); break;
  }
  return os.str();
}

void Basis::add(const BasisIndex& b, int level, int depth, int level_depth, int component) {
  lookup_.emplace(key_of(b, component), size());
  labels_.push_back(b);
  component_.push_back(component);
  level_.push_back(level);
  depth_.push_back(depth);
  level_depth_.push_back(level_depth);
  components_ = std::max(components_, component + 1);
}

int Basis::find(const BasisIndex& b, int component) const {
  auto it = lookup_.find(key_of(b, component));
  return it == lookup_.end() ? -1 : it->second;
}

BasisPtr podles_basis(int N, int which) {
  auto b = std::make_shared<Basis>();
  for (int sign : {+1, -1}) {
    if (which != 0 && which != sign) continue;
    for (int k = 0; k < N; ++k) b->add(PodlesIndex{k, sign}, k, N - 1 - k, N - 1 - k);
  }
  return b;
}

BasisPtr basic_basis(int N, int L) {
  auto b = std::make_shared<Basis>();
  for (int k = 0; k < N; ++k) {
    for (int l = -L; l <= L; ++l) {
      b->add(BasicIndex{k, l}, k, std::min(N - 1 - k, L - std::abs(l)), N - 1 - k);
    }
  }
  return b;
}

BasisPtr dlssv_basis(int jmax2) {
  auto b = std::make_shared<Basis>();
  for (int j2 = 0; j2 <= jmax2; ++j2) {
    for (bool up : {true, false}) {
      if (!up && j2 == 0) continue;
      const int nmax2 = up ? j2 + 1 : j2 - 1;
      for (int m2 = -j2; m2 <= j2; m2 += 2) {
        for (int n2 = -nmax2; n2 <= nmax2; n2 += 2) {
          b->add(DlssvIndex{j2, m2, n2, up}, j2, jmax2 - j2, jmax2 - j2);
        }
      }
    }
  }
  return b;
}

BasisPtr amplify(const BasisPtr& b, int d) {
  auto out = std::make_shared<Basis>();
  for (int c = 0; c < d; ++c) {
    for (int i = 0; i < b->size(); ++i) {
      out->add((*b)[i], b->level(i), b->depth(i), b->level_depth(i), c);
    }
  }
  return out;
}

}  // namespace qmod
