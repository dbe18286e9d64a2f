#include "escdim/model_json.hpp"

#include "escdim/errors.hpp"

namespace escdim {

using nlohmann::json;

namespace {

cplx cplx_from(const json& j, const char* what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ConfigError(std::string("model json: ") + what +
                      " must be a number or [re, im]");
}

json cplx_to(cplx z) { return json::array({z.real(), z.imag()}); }

AffineMap affine_from(const json& j, const char* what) {
    if (!j.is_object())
        throw ConfigError(std::string("model json: ") + what + " must be an object");
    AffineMap m;
    cplx a{1.0, 0.0}, b{0.0, 0.0};
    if (j.contains("a")) a = cplx_from(j.at("a"), what);
    if (j.contains("b")) b = cplx_from(j.at("b"), what);
    return AffineMap(a, b);
}

json affine_to(const AffineMap& m) {
    return json{{"a", cplx_to(m.a)}, {"b", cplx_to(m.b)}};
}

} // namespace

FunctionModel model_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("family"))
            throw ConfigError("model json: missing \"family\"");
        const std::string fam = j.at("family").get<std::string>();
        const double quad_tol = j.value("quad_tol", 1e-8);
        if (fam == "F0") {
            cplx kappa{0.0, 0.0};
            if (j.contains("kappa")) kappa = cplx_from(j.at("kappa"), "kappa");
            return FunctionModel::f0(kappa, quad_tol);
        }
        if (fam == "fp") {
            if (!j.contains("p")) throw ConfigError("model json: fp needs \"p\"");
            return FunctionModel::fp(j.at("p").get<double>(), j.value("K", 0.0),
                                     quad_tol);
        }
        if (fam == "exp") return FunctionModel::exponential(quad_tol);
        if (fam == "pushforward") {
            if (!j.contains("base"))
                throw ConfigError("model json: pushforward needs \"base\"");
            const FunctionModel base = model_from_json(j.at("base"));
            AffineMap phi, psi;
            if (j.contains("phi")) phi = affine_from(j.at("phi"), "phi");
            if (j.contains("psi")) psi = affine_from(j.at("psi"), "psi");
            return FunctionModel::pushforward(base, phi, psi);
        }
        throw ConfigError("model json: unknown family \"" + fam + "\"");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("model json: ") + e.what());
    }
}

json model_to_json(const FunctionModel& m) {
    switch (m.family()) {
        case Family::F0:
            return json{{"family", "F0"},
                        {"kappa", cplx_to(m.kappa())},
                        {"quad_tol", m.quad_tol()}};
        case Family::Fp:
            return json{{"family", "fp"},
                        {"p", m.p()},
                        {"K", m.K()},
                        {"quad_tol", m.quad_tol()}};
        case Family::Exp:
            return json{{"family", "exp"}, {"quad_tol", m.quad_tol()}};
        case Family::Pushforward:
            return json{{"family", "pushforward"},
                        {"base", model_to_json(m.base())},
                        {"phi", affine_to(m.phi())},
                        {"psi", affine_to(m.psi())}};
    }
    throw ConfigError("model json: unknown family enum");
}

FunctionModel model_from_string(const std::string& text) {
    if (text == "exp") return FunctionModel::exponential();
    if (text == "F0") return FunctionModel::f0();
    if (!text.empty() && text[0] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("model json parse: ") + e.what());
        }
        return model_from_json(j);
    }
    throw ConfigError("model spec must be \"exp\", \"F0\", or inline JSON: " + text);
}

} // namespace escdim
