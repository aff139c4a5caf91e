#pragma once

#include <stdexcept>
#include <string>

namespace rfimon {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define RFIMON_ERROR(NAME)                           \
    class NAME : public Error {                      \
      public:                                        \
        using Error::Error;                          \
    }

// frame / stream ingestion
RFIMON_ERROR(BadSync);
RFIMON_ERROR(BadChecksum);
RFIMON_ERROR(Truncated);
RFIMON_ERROR(LayoutMismatch);
RFIMON_ERROR(PayloadTooShort);
RFIMON_ERROR(Unreadable);

// calibration
RFIMON_ERROR(AlreadyAdjusted);
RFIMON_ERROR(Underdetermined);
RFIMON_ERROR(DegenerateTemps);
RFIMON_ERROR(TempOutOfRange);
RFIMON_ERROR(BandNotCovered);
RFIMON_ERROR(BinMisalignment);

// nominal model
RFIMON_ERROR(TooFewPoints);
RFIMON_ERROR(DegenerateCovariance);
RFIMON_ERROR(OffsetTooLarge);

// regions
RFIMON_ERROR(EllipseExcludesMean);

// optimizer
RFIMON_ERROR(DegenerateProposal);
RFIMON_ERROR(NoFeasiblePoint);

// simulator / evaluation
RFIMON_ERROR(NoRamp);
RFIMON_ERROR(LengthMismatch);
RFIMON_ERROR(WindowOutOfRange);

// file linkage
RFIMON_ERROR(HashMismatch);

#undef RFIMON_ERROR

}  // namespace rfimon
