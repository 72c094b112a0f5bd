#pragma once
// Raw interbank loan records and their CSV form.
//
// File format (UTF-8, header row):
//   date,time,lender_id,borrower_id,amount,rate,maturity
// date YYYY-MM-DD, time seconds-within-day (may be empty), amount in millions
// of EUR, maturity one of the codes below.

#include <array>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "liqnet/calendar.hpp"
#include "liqnet/csv.hpp"

namespace liqnet {

enum class Maturity : int {
  ON, ONL, TN, TNL, SN, SNL,
  W1, W1L, W2, W3,
  M1, M2, M3, M4, M5, M6, M7, M8, M9, M10, M11,
  Y1,
};

inline constexpr std::array<std::string_view, 22> kMaturityCodes = {
    "ON", "ONL", "TN", "TNL", "SN", "SNL", "1W", "1WL", "2W", "3W", "1M",
    "2M", "3M", "4M", "5M", "6M", "7M", "8M", "9M", "10M", "11M", "1Y"};

inline std::optional<Maturity> maturity_from_code(std::string_view code) {
  for (std::size_t i = 0; i < kMaturityCodes.size(); ++i) {
    if (kMaturityCodes[i] == code) return static_cast<Maturity>(i);
  }
  return std::nullopt;
}

inline std::string_view maturity_code(Maturity m) {
  return kMaturityCodes[static_cast<std::size_t>(m)];
}

struct TransactionRecord {
  Date date;
  std::optional<int> time_s;  // seconds within day
  std::string lender_id;
  std::string borrower_id;
  double amount = 0.0;  // millions of EUR, > 0
  double rate = 0.0;    // percent, informational
  Maturity maturity = Maturity::ON;
};

// Bank identifiers are opaque but must survive the CSV round trip.
inline std::optional<std::string> validate_bank_id(const std::string& id) {
  if (id.empty()) return "empty bank id";
  if (id.find(',') != std::string::npos || id.find('\n') != std::string::npos)
    return "bank id contains a separator character";
  if (id[0] == '#') return "bank id starts with '#'";
  return std::nullopt;
}

// Returns a reason if the record violates an invariant, nullopt if it is fine.
inline std::optional<std::string> validate_record(const TransactionRecord& r) {
  if (auto bad = validate_bank_id(r.lender_id)) return *bad + " (lender)";
  if (auto bad = validate_bank_id(r.borrower_id)) return *bad + " (borrower)";
  if (r.lender_id == r.borrower_id) return std::string("self-loop: ") + r.lender_id;
  if (!(r.amount > 0.0)) return "nonpositive amount";
  if (r.time_s && (*r.time_s < 0 || *r.time_s >= 86400)) return "time out of range";
  if (!r.date.valid()) return "invalid date";
  return std::nullopt;
}

struct IngestReject {
  std::size_t line_no = 0;  // physical line in the file
  std::string reason;
};

struct IngestResult {
  std::vector<TransactionRecord> records;
  std::vector<IngestReject> rejects;
};

inline constexpr const char* kTransactionsHeader =
    "date,time,lender_id,borrower_id,amount,rate,maturity";

// Parses the transaction CSV. Malformed rows are collected in `rejects`;
// callers decide whether any reject is fatal.
inline IngestResult read_transactions_csv(std::istream& in) {
  IngestResult result;
  for (const auto& row : csv::read_rows(in, kTransactionsHeader, "transactions")) {
    auto reject = [&](std::string reason) {
      result.rejects.push_back(IngestReject{row.line_no, std::move(reason)});
    };
    if (row.fields.size() != 7) {
      reject("expected 7 fields, got " + std::to_string(row.fields.size()));
      continue;
    }
    TransactionRecord rec;
    try {
      rec.date = Date::parse(row.fields[0]);
      if (!row.fields[1].empty())
        rec.time_s = static_cast<int>(csv::parse_long(row.fields[1], "time"));
      rec.lender_id = row.fields[2];
      rec.borrower_id = row.fields[3];
      rec.amount = csv::parse_double(row.fields[4], "amount");
      rec.rate = row.fields[5].empty() ? 0.0 : csv::parse_double(row.fields[5], "rate");
      const auto mat = maturity_from_code(row.fields[6]);
      if (!mat) {
        reject("unknown maturity code '" + row.fields[6] + "'");
        continue;
      }
      rec.maturity = *mat;
    } catch (const std::exception& e) {
      reject(e.what());
      continue;
    }
    if (auto bad = validate_record(rec)) {
      reject(*bad);
      continue;
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

inline void write_transactions_csv(std::ostream& out, const std::vector<TransactionRecord>& records,
                                   const std::vector<std::string>& comment_lines = {}) {
  for (const auto& c : comment_lines) out << "# " << c << '\n';
  out << kTransactionsHeader << '\n';
  for (const auto& r : records) {
    out << r.date.to_string() << ',';
    if (r.time_s) out << *r.time_s;
    out << ',' << r.lender_id << ',' << r.borrower_id << ',' << csv::format_double(r.amount) << ','
        << csv::format_double(r.rate) << ',' << maturity_code(r.maturity) << '\n';
  }
}

}  // namespace liqnet
