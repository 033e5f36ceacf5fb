#pragma once

#include "json.hpp"
#include "zkfault/gf.hpp"
#include "zkfault/less.hpp"
#include "zkfault/monomial.hpp"
#include "zkfault/xof.hpp"

namespace zkfault {

void to_json(nlohmann::json& j, const FqMatrix& m);
void from_json(const nlohmann::json& j, FqMatrix& m);
void to_json(nlohmann::json& j, const RrefMatrix& m);
void from_json(const nlohmann::json& j, RrefMatrix& m);
void to_json(nlohmann::json& j, const MonomialMatrix& m);
void from_json(const nlohmann::json& j, MonomialMatrix& m);
void to_json(nlohmann::json& j, const PartialMonomialMatrix& m);
void from_json(const nlohmann::json& j, PartialMonomialMatrix& m);
void to_json(nlohmann::json& j, const Digest& d);

nlohmann::json secret_key_json(const LessSecretKey& sk);
LessSecretKey secret_key_from_json(const nlohmann::json& j);  // re-expands Q_i and G_0
nlohmann::json public_key_json(const LessPublicKey& pk);
LessPublicKey public_key_from_json(const nlohmann::json& j);
nlohmann::json signature_json(const LessSignature& sig);
LessSignature signature_from_json(const nlohmann::json& j);  // throws MalformedSignature

}  // namespace zkfault
