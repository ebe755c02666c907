#include "ktori/conformal_factor.hpp"

#include <stdexcept>

namespace kt {

ConformalFactor ConformalFactor::inverse_trig(Rational c_, Rational a_) {
    if (a_.is_zero() || !(c_ > a_.abs()))
        throw std::invalid_argument("inverse_trig factor requires c > |a| > 0");
    ConformalFactor f;
    f.kind = Kind::inverse_trig;
    f.c = std::move(c_);
    f.a = std::move(a_);
    return f;
}

ConformalFactor ConformalFactor::trig_exponent(Rational amp_) {
    if (amp_.is_zero()) throw std::invalid_argument("trig_exponent factor requires A != 0");
    ConformalFactor f;
    f.kind = Kind::trig_exponent;
    f.amp = std::move(amp_);
    return f;
}

ConformalFactor ConformalFactor::parse(const std::string& spec) {
    if (spec == "flat") return flat();
    auto colon = spec.find(':');
    std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "inv-cos") {
        auto comma = args.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("inv-cos factor expects inv-cos:<c>,<a>");
        return inverse_trig(Rational::from_string(args.substr(0, comma)),
                            Rational::from_string(args.substr(comma + 1)));
    }
    if (head == "exp-cos") {
        if (args.empty()) throw std::invalid_argument("exp-cos factor expects exp-cos:<A>");
        return trig_exponent(Rational::from_string(args));
    }
    throw std::invalid_argument("unknown factor spec: " + spec);
}

std::string ConformalFactor::spec_string() const {
    switch (kind) {
        case Kind::flat: return "flat";
        case Kind::inverse_trig: return "inv-cos:" + c.to_string() + "," + a.to_string();
        case Kind::trig_exponent: return "exp-cos:" + amp.to_string();
    }
    return "flat";
}

}  // namespace kt
