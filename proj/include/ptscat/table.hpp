#ifndef PTSCAT_TABLE_HPP
#define PTSCAT_TABLE_HPP

// Tabular output shared by every CLI command, with CSV and JSON encodings
// that parse back to the same table.
//
// CSV: `# key: value` metadata lines, one header line, then rows.  A complex
// column `z` occupies two fields `z_re,z_im`; text cells are always quoted.
// JSON: {"meta": {...}, "columns": [{"name", "type"}...], "data": {name: [...]}}
// with complex values as [re, im] and non-finite numbers as null.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "complexfn.hpp"
#include "errors.hpp"
#include "states.hpp"

namespace ptscat {

enum class ColumnType { Real, Complex, Text };

inline const char* to_string(ColumnType t)
{
    switch (t) {
    case ColumnType::Real: return "real";
    case ColumnType::Complex: return "complex";
    case ColumnType::Text: return "text";
    }
    return "?";
}

inline ColumnType column_type_from_string(std::string_view s)
{
    if (s == "real") return ColumnType::Real;
    if (s == "complex") return ColumnType::Complex;
    if (s == "text") return ColumnType::Text;
    throw InvalidArgument("unknown column type '" + std::string(s) + "'");
}

struct Column {
    std::string name;
    ColumnType type;

    bool operator==(const Column&) const = default;
};

using Cell = std::variant<double, Complex, std::string>;

enum class Format { Csv, Json };

inline Format format_from_string(std::string_view s)
{
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw InvalidArgument("unknown format '" + std::string(s) + "' (expected csv or json)");
}

namespace detail {

inline std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    // + 0.0 folds -0 into 0
    std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
    return buf;
}

inline std::optional<double> parse_double(std::string_view s)
{
    if (s == "nan" || s == "-nan") return std::nan("");
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        return std::nullopt;
    return v;
}

inline std::string csv_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

struct CsvField {
    std::string text;
    bool quoted;
};

inline std::vector<CsvField> split_csv_line(std::string_view line)
{
    std::vector<CsvField> out;
    std::size_t i = 0;
    while (true) {
        CsvField f{{}, false};
        if (i < line.size() && line[i] == '"') {
            f.quoted = true;
            ++i;
            while (true) {
                if (i >= line.size())
                    throw InvalidArgument("CSV: unterminated quoted field");
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        f.text += '"';
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                f.text += line[i++];
            }
            if (i < line.size() && line[i] != ',')
                throw InvalidArgument("CSV: text after closing quote");
        }
        else {
            const std::size_t end = line.find(',', i);
            f.text = std::string(line.substr(i, end == std::string_view::npos ? end : end - i));
            i = end == std::string_view::npos ? line.size() : end;
        }
        out.push_back(std::move(f));
        if (i >= line.size())
            break;
        ++i;  // comma
    }
    return out;
}

inline nlohmann::ordered_json json_number(double v)
{
    if (!std::isfinite(v))
        return nullptr;
    return v + 0.0;
}

inline double json_to_double(const nlohmann::ordered_json& j)
{
    if (j.is_null())
        return std::nan("");
    if (!j.is_number())
        throw InvalidArgument("JSON: expected a number");
    return j.get<double>();
}

} // namespace detail

/// Parse "3.5", "0.5+2i", "2i", "-i", "1e-3-4.5e1i" (j is accepted for i).
inline Complex parse_complex(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    auto fail = [&] { return InvalidArgument("cannot parse complex number '" + std::string(text) + "'"); };
    if (s.empty())
        throw fail();
    if (s.back() != 'i' && s.back() != 'j') {
        const auto v = detail::parse_double(s);
        if (!v) throw fail();
        return *v;
    }
    s.pop_back();
    // split at the last sign that is not the leading one or an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const std::string re_text = split == std::string::npos ? "" : s.substr(0, split);
    std::string im_text = split == std::string::npos ? s : s.substr(split);
    double re = 0.0;
    if (!re_text.empty()) {
        const auto v = detail::parse_double(re_text);
        if (!v) throw fail();
        re = *v;
    }
    double im;
    if (im_text.empty() || im_text == "+")
        im = 1.0;
    else if (im_text == "-")
        im = -1.0;
    else {
        const auto v = detail::parse_double(im_text);
        if (!v) throw fail();
        im = *v;
    }
    return {re, im};
}

/// {"mu": [re, im], "coeffs": [[re, im], ...]}
inline nlohmann::ordered_json to_json(const SinhCoshForm& f)
{
    nlohmann::ordered_json j;
    j["mu"] = {detail::json_number(f.mu().real()), detail::json_number(f.mu().imag())};
    j["coeffs"] = nlohmann::ordered_json::array();
    for (const Complex& c : f.coeffs()) j["coeffs"].push_back({detail::json_number(c.real()), detail::json_number(c.imag())});
    return j;
}

inline SinhCoshForm form_from_json(const nlohmann::ordered_json& j)
{
    try {
        const auto& mu = j.at("mu");
        Polynomial coeffs;
        for (const auto& c : j.at("coeffs")) coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
        return {std::move(coeffs), Complex(mu.at(0).get<double>(), mu.at(1).get<double>())};
    }
    catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("SinhCoshForm JSON: ") + e.what());
    }
}

class OutputTable {
public:
    OutputTable() = default;
    explicit OutputTable(std::vector<Column> columns) : columns_(std::move(columns)) {}

    const std::vector<Column>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
    const std::vector<std::pair<std::string, std::string>>& meta() const noexcept { return meta_; }

    /// Metadata key reserved for the column-type line of the CSV layout.
    static constexpr const char* types_key = "types";

    void set_meta(const std::string& key, std::string value)
    {
        if (key == types_key || key.empty() || key.find_first_of(":\n") != std::string::npos)
            throw InvalidArgument("OutputTable: invalid metadata key '" + key + "'");
        if (value.find('\n') != std::string::npos)
            throw InvalidArgument("OutputTable: metadata value for '" + key + "' spans lines");
        for (auto& [k, v] : meta_)
            if (k == key) {
                v = std::move(value);
                return;
            }
        meta_.emplace_back(key, std::move(value));
    }

    std::optional<std::string> meta_value(const std::string& key) const
    {
        for (const auto& [k, v] : meta_)
            if (k == key) return v;
        return std::nullopt;
    }

    void add_row(std::vector<Cell> row)
    {
        if (row.size() != columns_.size())
            throw InvalidArgument("OutputTable: row has " + std::to_string(row.size()) + " cells for "
                                  + std::to_string(columns_.size()) + " columns");
        for (std::size_t i = 0; i < row.size(); ++i) {
            // reals are accepted in complex columns
            if (columns_[i].type == ColumnType::Complex && std::holds_alternative<double>(row[i]))
                row[i] = Complex(std::get<double>(row[i]));
            if (row[i].index() != static_cast<std::size_t>(columns_[i].type))
                throw InvalidArgument("OutputTable: cell type mismatch in column '" + columns_[i].name + "'");
        }
        rows_.push_back(std::move(row));
    }

    std::size_t column_index(const std::string& name) const
    {
        for (std::size_t i = 0; i < columns_.size(); ++i)
            if (columns_[i].name == name) return i;
        throw InvalidArgument("OutputTable: no column '" + name + "'");
    }

    std::string to_csv() const
    {
        std::ostringstream out;
        for (const auto& [k, v] : meta_) out << "# " << k << ": " << v << '\n';
        out << "# " << types_key << ": ";
        for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << to_string(columns_[i].type);
        out << '\n';
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i) out << ',';
            if (columns_[i].type == ColumnType::Complex)
                out << columns_[i].name << "_re," << columns_[i].name << "_im";
            else
                out << columns_[i].name;
        }
        out << '\n';
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out << ',';
                if (const auto* d = std::get_if<double>(&row[i]))
                    out << detail::format_double(*d);
                else if (const auto* z = std::get_if<Complex>(&row[i]))
                    out << detail::format_double(z->real()) << ',' << detail::format_double(z->imag());
                else
                    out << detail::csv_quote(std::get<std::string>(row[i]));
            }
            out << '\n';
        }
        return out.str();
    }

    std::string to_json() const
    {
        nlohmann::ordered_json j;
        j["meta"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : meta_) j["meta"][k] = v;
        j["columns"] = nlohmann::ordered_json::array();
        j["data"] = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            j["columns"].push_back({{"name", columns_[c].name}, {"type", to_string(columns_[c].type)}});
            auto arr = nlohmann::ordered_json::array();
            for (const auto& row : rows_) {
                if (const auto* d = std::get_if<double>(&row[c]))
                    arr.push_back(detail::json_number(*d));
                else if (const auto* z = std::get_if<Complex>(&row[c]))
                    arr.push_back({detail::json_number(z->real()), detail::json_number(z->imag())});
                else
                    arr.push_back(std::get<std::string>(row[c]));
            }
            j["data"][columns_[c].name] = std::move(arr);
        }
        return j.dump(2) + "\n";
    }

    std::string serialize(Format f) const { return f == Format::Csv ? to_csv() : to_json(); }

    /// Column types come from the "# types:" line when present; otherwise
    /// `_re`/`_im` header pairs are complex and quoted cells are text.
    static OutputTable from_csv(std::string_view text)
    {
        OutputTable t;
        std::vector<std::string> lines;
        {
            std::istringstream in{std::string(text)};
            std::string line;
            while (std::getline(in, line)) {
                if (!line.empty() && line.back() == '\r') line.pop_back();
                lines.push_back(std::move(line));
            }
        }
        std::size_t li = 0;
        for (; li < lines.size() && !lines[li].empty() && lines[li][0] == '#'; ++li) {
            const std::string& l = lines[li];
            const std::size_t colon = l.find(": ");
            if (l.size() < 2 || l[1] != ' ' || colon == std::string::npos)
                throw InvalidArgument("CSV: malformed metadata line '" + l + "'");
            t.meta_.emplace_back(l.substr(2, colon - 2), l.substr(colon + 2));
        }
        std::optional<std::vector<ColumnType>> declared;
        for (auto it = t.meta_.begin(); it != t.meta_.end(); ++it) {
            if (it->first != types_key) continue;
            declared.emplace();
            for (const auto& f : detail::split_csv_line(it->second)) declared->push_back(column_type_from_string(f.text));
            t.meta_.erase(it);
            break;
        }
        if (li >= lines.size())
            throw InvalidArgument("CSV: missing header line");
        const auto header = detail::split_csv_line(lines[li++]);
        std::vector<std::string> fields;
        for (const auto& f : header) fields.push_back(f.text);

        std::vector<std::vector<detail::CsvField>> body;
        for (; li < lines.size(); ++li) {
            if (lines[li].empty()) continue;
            auto cells = detail::split_csv_line(lines[li]);
            if (cells.size() != fields.size())
                throw InvalidArgument("CSV: row " + std::to_string(body.size() + 1) + " has "
                                      + std::to_string(cells.size()) + " fields, header has "
                                      + std::to_string(fields.size()));
            body.push_back(std::move(cells));
        }

        auto ends_with = [](const std::string& s, std::string_view suf) {
            return s.size() > suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
        };
        std::vector<std::size_t> first_field;
        if (declared) {
            std::size_t f = 0;
            for (std::size_t c = 0; c < declared->size(); ++c) {
                const ColumnType type = (*declared)[c];
                const std::size_t width = type == ColumnType::Complex ? 2 : 1;
                if (f + width > fields.size())
                    throw InvalidArgument("CSV: header does not match the declared column types");
                std::string name = fields[f];
                if (type == ColumnType::Complex) {
                    if (!ends_with(fields[f], "_re") || fields[f + 1] != name.substr(0, name.size() - 3) + "_im")
                        throw InvalidArgument("CSV: complex column '" + name + "' lacks its _im partner");
                    name.resize(name.size() - 3);
                }
                first_field.push_back(f);
                t.columns_.push_back({name, type});
                f += width;
            }
            if (f != fields.size())
                throw InvalidArgument("CSV: header does not match the declared column types");
        }
        for (std::size_t i = 0; !declared && i < fields.size(); ++i) {
            first_field.push_back(i);
            if (ends_with(fields[i], "_re") && i + 1 < fields.size() && ends_with(fields[i + 1], "_im")
                && fields[i].substr(0, fields[i].size() - 3) == fields[i + 1].substr(0, fields[i + 1].size() - 3)) {
                t.columns_.push_back({fields[i].substr(0, fields[i].size() - 3), ColumnType::Complex});
                ++i;
                continue;
            }
            bool text = false;
            for (const auto& row : body) text = text || row[i].quoted;
            t.columns_.push_back({fields[i], text ? ColumnType::Text : ColumnType::Real});
        }
        for (const auto& row : body) {
            std::vector<Cell> cells;
            for (std::size_t c = 0; c < t.columns_.size(); ++c) {
                const std::size_t f = first_field[c];
                auto num = [&](std::size_t idx) {
                    const auto v = detail::parse_double(row[idx].text);
                    if (!v)
                        throw InvalidArgument("CSV: cannot parse number '" + row[idx].text + "'");
                    return *v;
                };
                switch (t.columns_[c].type) {
                case ColumnType::Real: cells.emplace_back(num(f)); break;
                case ColumnType::Complex: cells.emplace_back(Complex(num(f), num(f + 1))); break;
                case ColumnType::Text: cells.emplace_back(row[f].text); break;
                }
            }
            t.rows_.push_back(std::move(cells));
        }
        return t;
    }

    static OutputTable from_json(std::string_view text)
    {
        OutputTable t;
        try {
            const auto j = nlohmann::ordered_json::parse(text);
            for (const auto& [k, v] : j.at("meta").items()) t.set_meta(k, v.get<std::string>());
            for (const auto& c : j.at("columns"))
                t.columns_.push_back({c.at("name").get<std::string>(),
                                      column_type_from_string(c.at("type").get<std::string>())});
            const auto& data = j.at("data");
            std::size_t n = t.columns_.empty() ? 0 : data.at(t.columns_[0].name).size();
            for (std::size_t r = 0; r < n; ++r) {
                std::vector<Cell> row;
                for (const auto& col : t.columns_) {
                    const auto& v = data.at(col.name).at(r);
                    switch (col.type) {
                    case ColumnType::Real: row.emplace_back(detail::json_to_double(v)); break;
                    case ColumnType::Complex:
                        row.emplace_back(Complex(detail::json_to_double(v.at(0)), detail::json_to_double(v.at(1))));
                        break;
                    case ColumnType::Text: row.emplace_back(v.get<std::string>()); break;
                    }
                }
                t.rows_.push_back(std::move(row));
            }
            for (const auto& col : t.columns_)
                if (data.at(col.name).size() != n)
                    throw InvalidArgument("JSON: column '" + col.name + "' has a different length");
        }
        catch (const nlohmann::json::exception& e) {
            throw InvalidArgument(std::string("JSON table: ") + e.what());
        }
        return t;
    }

    static OutputTable parse(std::string_view text, Format f) { return f == Format::Csv ? from_csv(text) : from_json(text); }

private:
    std::vector<Column> columns_;
    std::vector<std::vector<Cell>> rows_;
    std::vector<std::pair<std::string, std::string>> meta_;
};

} // namespace ptscat

#endif // PTSCAT_TABLE_HPP
