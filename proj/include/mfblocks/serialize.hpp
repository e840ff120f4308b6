#pragma once

// JSON encodings used in reports and CLI output.

#include <json.hpp>
#include <string>
#include <vector>

#include "mfblocks/character.hpp"
#include "mfblocks/group.hpp"
#include "mfblocks/group_algebra.hpp"
#include "mfblocks/morita.hpp"
#include "mfblocks/quiver_algebra.hpp"
#include "mfblocks/twisted.hpp"

namespace mfb {

using json = nlohmann::json;

/// Little-endian coefficient array over F_ell.
inline json to_json(const FieldContext& F, FieldElem x) { return F.coeffs(x); }

inline json to_json(const Params& P, const GroupElem& g) {
  return {{"v1", d_vector(P, g, 1)}, {"x1", g.x1}, {"v2", d_vector(P, g, 2)}, {"x2", g.x2}, {"h", {g.a, g.b, g.c}}};
}

inline json to_json(const Character& chi) { return {{"group", char_group_name(chi.group)}, {"e", chi.e}}; }

inline json to_json(const Params& P, const GAElem& x) {
  json out = json::array();
  for (const auto& [g, c] : x.sorted_terms()) out.push_back({{"elem", to_json(P, g)}, {"coeff", to_json(P.field(), c)}});
  return out;
}

inline json to_json(const QuivLabel& l) { return {{"side", l.side}, {"psi_exp", l.psi}, {"m", l.m}}; }

inline json to_json(const QuiverAlgebra& Q, const QuivAElem& u) {
  json out = json::array();
  for (const auto& [k, c] : u.sorted_terms()) out.push_back({{"label", to_json(Q.label(k))}, {"coeff", to_json(Q.field(), c)}});
  return out;
}

inline json to_json(const TwistedB0& T, const TTElem& t) {
  json out = json::array();
  for (const auto& [k, c] : t.sorted_terms())
    out.push_back({{"u", to_json(T.q(1).label(T.key_u(k)))},
                   {"v", to_json(T.q(2).label(T.key_v(k)))},
                   {"coeff", to_json(T.field(), c)}});
  return out;
}

inline json to_json(const Params& P) {
  return {{"ell", P.ell}, {"p", P.p}, {"r", P.r}, {"d", P.d}, {"modulus", P.field().modulus()}};
}

inline json to_json(const Params& P, const PairingTable& table) {
  json rows = json::array();
  for (uint64_t chi = 0; chi < table.r; ++chi) {
    json row = json::array();
    for (uint64_t eta = 0; eta < table.r; ++eta) {
      // Report each entry as the exponent e with value zeta_r^e.
      int64_t e = -1;
      for (uint64_t k = 0; k < P.r; ++k)
        if (P.zeta_r_pow[k] == table.at(chi, eta)) e = static_cast<int64_t>(k);
      row.push_back(e);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mfb
