#include "rfimon/types.hpp"

#include "rfimon/errors.hpp"

namespace rfimon {

const char* label_name(Label l) {
    switch (l) {
        case Label::Nominal: return "Nominal";
        case Label::Jamming: return "Jamming";
        case Label::Blocked: return "Blocked";
        case Label::Spoofing: return "Spoofing";
        case Label::Unrealistic: return "Unrealistic";
        case Label::SignalLoss: return "SignalLoss";
    }
    return "?";
}

Label label_from_name(const std::string& name) {
    if (name == "Nominal") return Label::Nominal;
    if (name == "Jamming") return Label::Jamming;
    if (name == "Blocked") return Label::Blocked;
    if (name == "Spoofing") return Label::Spoofing;
    if (name == "Unrealistic") return Label::Unrealistic;
    if (name == "SignalLoss") return Label::SignalLoss;
    throw Error("unknown label: " + name);
}

}  // namespace rfimon
