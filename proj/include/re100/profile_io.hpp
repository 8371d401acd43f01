#pragma once

#include <string>
#include <vector>

#include "re100/profile.hpp"

namespace re100 {

// Notes collected while ingesting a data file (gap interpolation events).
struct IngestReport {
    std::vector<std::string> notes;
};

// Reads an hourly table: delimited text, header row
// `timestamp,demand,<source1>,<source2>,...`, one row per hour. Timestamps are
// informative only; row order defines t. Missing cells (empty or "nan") are
// linearly interpolated when at most 3 consecutive hours are missing; longer
// gaps, negative values, non-numeric cells, missing columns and ragged rows
// raise IngestError naming the location. Columns that already sum to 1 within
// 1e-9 are taken as-is, otherwise they are normalized.
ProfileSet ingest_occto(const std::string& path, const std::string& region,
                        const std::string& year, IngestReport* report = nullptr);

// Writes the same layout with normalized values at 12 significant digits.
// A file produced by export_occto re-ingests to the identical byte sequence.
void export_occto(const ProfileSet& set, const std::string& path);

}  // namespace re100
