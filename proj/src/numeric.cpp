#include "qmfmc/numeric.hpp"

#include "qmfmc/errors.hpp"

namespace qmfmc {

Rat parse_rat(const std::string& text) {
    const auto ok = [](const std::string& part) {
        if (part.empty()) return false;
        const size_t start = part[0] == '-' ? 1 : 0;
        if (start == part.size()) return false;
        return part.find_first_not_of("0123456789", start) == std::string::npos;
    };
    const size_t slash = text.find('/');
    std::string n = text.substr(0, slash);
    std::string d = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!ok(n) || !ok(d)) throw ParseError("invalid rational \"" + text + "\"");
    Rat r(Int(n), Int(d));
    if (r.get_den() == 0) throw ParseError("zero denominator in \"" + text + "\"");
    r.canonicalize();
    return r;
}

}  // namespace qmfmc
