#ifndef ZEQ_REPORT_HPP
#define ZEQ_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include <zeq/jet.hpp>
#include <zeq/mero.hpp>
#include <zeq/pseudopoly.hpp>
#include <zeq/tower.hpp>
#include <zeq/weierstrass.hpp>

namespace zeq
{

// Insertion-ordered so that reports are byte-stable.
using Json = nlohmann::ordered_json;

// "num/den" for rationals; {"generator", "minpoly", "coeffs"} otherwise.
Json scalar_json(const Scalar &c);
// {"text", "terms": [{"exp": [..], "coeff": ..}]}, terms in ascending grlex.
Json poly_json(const Poly &p, const std::vector<std::string> &names);
// poly_json plus "order" and "exact".
Json jet_json(const Jet &j);
Json pseudo_json(const PseudoPolynomial &p);
Json change_json(const LinearChange &c, const VarContext &ctx);
Json gendisc_json(const GenDiscSequence &g);
Json form_json(const OneForm &w, const std::vector<std::string> &names);
Json record_json(const DivisorRecord &r, const std::vector<std::string> &names);

// Lowercase hex SHA-256.
std::string sha256_hex(const std::string &data);

// Compact, newline-terminated rendering used for reports on disk.
std::string dump_report(const Json &report);

} // namespace zeq

#endif
