#include "zkfault/serialize.hpp"

#include "zkfault/error.hpp"

namespace zkfault {

using nlohmann::json;

void to_json(json& j, const FqMatrix& m) {
    j = {{"rows", m.rows()}, {"cols", m.cols()}, {"data", to_hex(m.data())}};
}

void from_json(const json& j, FqMatrix& m) {
    m = FqMatrix(j.at("rows").get<size_t>(), j.at("cols").get<size_t>(), from_hex(j.at("data").get<std::string>()));
}

void to_json(json& j, const RrefMatrix& m) {
    to_json(j, m.matrix);
    j["pivots"] = m.pivot_cols;
}

void from_json(const json& j, RrefMatrix& m) {
    from_json(j, m.matrix);
    j.at("pivots").get_to(m.pivot_cols);
}

void to_json(json& j, const MonomialMatrix& m) { j = {{"n", m.n()}, {"perm", m.perm}, {"coeffs", m.coeffs}}; }

void from_json(const json& j, MonomialMatrix& m) {
    j.at("perm").get_to(m.perm);
    j.at("coeffs").get_to(m.coeffs);
    if (m.perm.size() != j.at("n").get<size_t>() || m.coeffs.size() != m.perm.size())
        throw DimensionMismatch("monomial length");
}

void to_json(json& j, const PartialMonomialMatrix& m) {
    j = {{"n", m.n}, {"k", m.k()}, {"perm", m.perm_inj}, {"coeffs", m.coeffs}};
}

void from_json(const json& j, PartialMonomialMatrix& m) {
    j.at("n").get_to(m.n);
    j.at("perm").get_to(m.perm_inj);
    j.at("coeffs").get_to(m.coeffs);
    if (m.perm_inj.size() != j.at("k").get<size_t>() || m.coeffs.size() != m.perm_inj.size())
        throw DimensionMismatch("partial monomial length");
}

void to_json(json& j, const Digest& d) { j = {{"t", d.t}, {"s", d.s}, {"entries", d.entries}}; }

json secret_key_json(const LessSecretKey& sk) {
    return {{"params", sk.params}, {"mseed", to_hex(sk.mseed_master)}, {"gseed", to_hex(sk.gseed)}};
}

LessSecretKey secret_key_from_json(const json& j) {
    LessParams p = j.at("params").get<LessParams>();
    return less_keygen(p, from_hex(j.at("mseed").get<std::string>()), from_hex(j.at("gseed").get<std::string>()))
        .first;
}

json public_key_json(const LessPublicKey& pk) {
    return {{"params", pk.params}, {"gseed", to_hex(pk.gseed)}, {"g0", pk.g0}, {"g", pk.g}};
}

LessPublicKey public_key_from_json(const json& j) {
    LessPublicKey pk;
    pk.params = j.at("params").get<LessParams>();
    pk.gseed = from_hex(j.at("gseed").get<std::string>());
    pk.g0 = j.at("g0").get<RrefMatrix>();
    pk.g = j.at("g").get<std::vector<RrefMatrix>>();
    return pk;
}

json signature_json(const LessSignature& sig) {
    std::vector<std::string> nodes;
    for (const auto& s : sig.tree_nodes) nodes.push_back(to_hex(s));
    return {{"salt", to_hex(sig.salt)}, {"cmt", to_hex(sig.cmt)}, {"tree_nodes", nodes}, {"rsp", sig.rsp}};
}

LessSignature signature_from_json(const json& j) {
    try {
        LessSignature sig;
        sig.salt = from_hex(j.at("salt").get<std::string>());
        sig.cmt = from_hex(j.at("cmt").get<std::string>());
        for (const auto& s : j.at("tree_nodes")) sig.tree_nodes.push_back(from_hex(s.get<std::string>()));
        sig.rsp = j.at("rsp").get<std::vector<PartialMonomialMatrix>>();
        return sig;
    } catch (const std::exception& e) {
        throw MalformedSignature(std::string("signature: ") + e.what());
    }
}

}  // namespace zkfault
