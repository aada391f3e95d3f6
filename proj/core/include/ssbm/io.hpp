#pragma once

#include <string>
#include <vector>

namespace ssbm {

// Fixed 17-significant-digit formatting: reports and plot CSVs are
// byte-identical across runs and round-trip doubles exactly.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Index of a named column, or throws.
    std::size_t column(const std::string& name) const;
};

CsvTable read_csv_file(const std::string& path);
CsvTable read_csv_string(const std::string& text);

// Minimal deterministic JSON emitter (insertion-ordered keys, fixed float
// format). NaN/inf serialize as null.
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& name);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(long long v);
    JsonWriter& value(unsigned long long v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& value(const char* v);
    JsonWriter& null_value();

    const std::string& str() const { return out_; }

  private:
    void separator();
    std::string out_;
    std::vector<bool> needs_comma_;
    bool after_key_ = false;
};

std::string json_escape(const std::string& s);

}  // namespace ssbm
