#include "gengeo/rational.hpp"

#include <sstream>

namespace gengeo {

std::string ratStr(const Rat& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1)
        os << "/" << boost::multiprecision::denominator(r);
    return os.str();
}

std::string GRat::str() const {
    if (isZero()) return "0";
    if (im == 0) return ratStr(re);
    std::string imPart;
    if (im == 1) imPart = "i";
    else if (im == -1) imPart = "-i";
    else imPart = ratStr(im) + "*i";
    if (re == 0) return imPart;
    std::string s = "(" + ratStr(re);
    if (im > 0) s += "+";
    s += imPart + ")";
    return s;
}

} // namespace gengeo
