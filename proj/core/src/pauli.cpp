#include "vqelab/pauli.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "vqelab/errors.hpp"

namespace vqe {

namespace {

constexpr std::complex<double> kPhaseByCode[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};  // i^code

// sigma_a sigma_b = i^phase_code * sigma_c
struct AxisProduct {
  std::uint8_t axis;
  std::uint8_t phase_code;
};

constexpr AxisProduct axis_product(Pauli a, Pauli b) {
  constexpr std::uint8_t I = 0, X = 1, Y = 2, Z = 3;
  constexpr AxisProduct table[4][4] = {
      /* I */ {{I, 0}, {X, 0}, {Y, 0}, {Z, 0}},
      /* X */ {{X, 0}, {I, 0}, {Z, 1}, {Y, 3}},
      /* Y */ {{Y, 0}, {Z, 3}, {I, 0}, {X, 1}},
      /* Z */ {{Z, 0}, {Y, 1}, {X, 3}, {I, 0}},
  };
  return table[static_cast<int>(a)][static_cast<int>(b)];
}

std::string format_double(double v) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  throw ValidationError("invalid Pauli axis value");
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw ValidationError(std::string("invalid Pauli axis character '") + c + "'");
  }
}

PauliString::PauliString(std::vector<Pauli> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw ValidationError("Pauli string must have length >= 1");
}

PauliString PauliString::parse(std::string_view text) {
  std::vector<Pauli> axes;
  axes.reserve(text.size());
  for (char c : text) axes.push_back(pauli_from_char(c));
  return PauliString(std::move(axes));
}

PauliString PauliString::identity(std::size_t n_qubits) {
  return PauliString(std::vector<Pauli>(n_qubits, Pauli::I));
}

bool PauliString::is_identity() const {
  return std::all_of(axes_.begin(), axes_.end(), [](Pauli p) { return p == Pauli::I; });
}

std::uint64_t PauliString::support_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < axes_.size(); ++q)
    if (axes_[q] != Pauli::I) mask |= std::uint64_t{1} << q;
  return mask;
}

std::uint64_t PauliString::flip_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < axes_.size(); ++q)
    if (axes_[q] == Pauli::X || axes_[q] == Pauli::Y) mask |= std::uint64_t{1} << q;
  return mask;
}

std::string PauliString::str() const {
  std::string s;
  s.reserve(axes_.size());
  for (Pauli p : axes_) s.push_back(pauli_char(p));
  return s;
}

PauliProduct pauli_multiply(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size())
    throw DimensionError("pauli_multiply: string lengths differ (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  std::vector<Pauli> out(a.size());
  std::uint8_t phase_code = 0;
  for (std::size_t q = 0; q < a.size(); ++q) {
    AxisProduct p = axis_product(a.axis(q), b.axis(q));
    out[q] = static_cast<Pauli>(p.axis);
    phase_code = static_cast<std::uint8_t>((phase_code + p.phase_code) & 3);
  }
  return {kPhaseByCode[phase_code], PauliString(std::move(out))};
}

QubitHamiltonian::QubitHamiltonian(std::size_t n_qubits, std::vector<PauliTerm> terms)
    : n_qubits_(n_qubits), terms_(std::move(terms)) {
  if (n_qubits_ == 0) throw ValidationError("QubitHamiltonian needs at least one qubit");
  for (const PauliTerm& t : terms_) {
    if (t.string.size() != n_qubits_)
      throw DimensionError("QubitHamiltonian: term '" + t.string.str() + "' has length " +
                           std::to_string(t.string.size()) + ", expected " +
                           std::to_string(n_qubits_));
    if (!std::isfinite(t.coefficient.real()) || !std::isfinite(t.coefficient.imag()))
      throw ValidationError("QubitHamiltonian: non-finite coefficient on '" + t.string.str() +
                            "'");
  }
}

QubitHamiltonian simplify(const QubitHamiltonian& h, double tol) {
  if (tol < 0.0) throw ValidationError("simplify: tolerance must be >= 0");
  std::map<std::vector<Pauli>, std::complex<double>> combined;
  for (const PauliTerm& t : h.terms()) combined[t.string.axes()] += t.coefficient;
  std::vector<PauliTerm> out;
  out.reserve(combined.size());
  for (auto& [axes, coeff] : combined) {
    if (std::abs(coeff) <= tol) continue;
    out.push_back({coeff, PauliString(axes)});
  }
  return QubitHamiltonian(h.n_qubits(), std::move(out));
}

double coefficient_l1_norm(const QubitHamiltonian& h) {
  double sum = 0.0;
  for (const PauliTerm& t : h.terms())
    if (!t.string.is_identity()) sum += std::abs(t.coefficient);
  return sum;
}

Eigen::MatrixXcd dense_matrix(const QubitHamiltonian& h) {
  if (h.n_qubits() > kMaxDenseQubits)
    throw CapacityError("dense_matrix: " + std::to_string(h.n_qubits()) +
                        " qubits exceeds the dense cap of " + std::to_string(kMaxDenseQubits));
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const PauliTerm& t : h.terms()) {
    const std::uint64_t flip = t.string.flip_mask();
    std::uint64_t y_mask = 0, z_mask = 0;
    for (std::size_t q = 0; q < t.string.size(); ++q) {
      if (t.string.axis(q) == Pauli::Y) y_mask |= std::uint64_t{1} << q;
      if (t.string.axis(q) == Pauli::Z) z_mask |= std::uint64_t{1} << q;
    }
    // column c maps to row c^flip with phase i^{|Y|} (-1)^{popcount(c & (Y|Z))}
    const std::complex<double> y_phase =
        kPhaseByCode[std::popcount(y_mask) & 3];
    for (std::uint64_t c = 0; c < dim; ++c) {
      const int sign = std::popcount(c & (y_mask | z_mask)) & 1 ? -1 : 1;
      m(c ^ flip, c) += t.coefficient * y_phase * static_cast<double>(sign);
    }
  }
  return m;
}

double exact_ground_energy(const QubitHamiltonian& h) {
  QubitHamiltonian s = simplify(h);
  for (const PauliTerm& t : s.terms())
    if (std::abs(t.coefficient.imag()) > 1e-12)
      throw ValidationError("exact_ground_energy: Hamiltonian is not Hermitian (term '" +
                            t.string.str() + "' has imaginary weight)");
  Eigen::MatrixXcd m = dense_matrix(s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("exact_ground_energy: eigensolver failed to converge");
  return solver.eigenvalues()(0);
}

FermionHamiltonian::FermionHamiltonian(std::size_t n_orbitals, std::vector<FermionTerm> terms)
    : n_orbitals_(n_orbitals), terms_(std::move(terms)) {
  if (n_orbitals_ == 0) throw ValidationError("FermionHamiltonian needs at least one orbital");
  if (terms_.empty()) throw ValidationError("FermionHamiltonian must be non-empty");
  for (const FermionTerm& t : terms_) {
    const std::size_t arity = t.kind == FermionTerm::Kind::OneBody ? 2 : 4;
    for (std::size_t k = 0; k < arity; ++k)
      if (t.indices[k] >= n_orbitals_)
        throw ValidationError("FermionHamiltonian: orbital index " +
                              std::to_string(t.indices[k]) + " out of range (n_orbitals = " +
                              std::to_string(n_orbitals_) + ")");
    if (!std::isfinite(t.value)) throw ValidationError("FermionHamiltonian: non-finite value");
  }
}

std::vector<PauliTerm> jw_ladder(std::size_t p, std::size_t n_qubits, bool dagger) {
  if (p >= n_qubits) throw ValidationError("jw_ladder: orbital index out of range");
  std::vector<Pauli> x_axes(n_qubits, Pauli::I);
  std::vector<Pauli> y_axes(n_qubits, Pauli::I);
  for (std::size_t j = 0; j < p; ++j) {
    x_axes[j] = Pauli::Z;
    y_axes[j] = Pauli::Z;
  }
  x_axes[p] = Pauli::X;
  y_axes[p] = Pauli::Y;
  const std::complex<double> y_coeff = dagger ? std::complex<double>(0.0, -0.5)
                                              : std::complex<double>(0.0, 0.5);
  return {{0.5, PauliString(std::move(x_axes))}, {y_coeff, PauliString(std::move(y_axes))}};
}

namespace {

// product of two Pauli-term sums
std::vector<PauliTerm> term_product(const std::vector<PauliTerm>& a,
                                    const std::vector<PauliTerm>& b) {
  std::vector<PauliTerm> out;
  out.reserve(a.size() * b.size());
  for (const PauliTerm& ta : a)
    for (const PauliTerm& tb : b) {
      PauliProduct p = pauli_multiply(ta.string, tb.string);
      out.push_back({ta.coefficient * tb.coefficient * p.phase, std::move(p.string)});
    }
  return out;
}

}  // namespace

QubitHamiltonian jordan_wigner(const FermionHamiltonian& h) {
  if (h.n_orbitals() > kMaxOrbitals)
    throw CapacityError("jordan_wigner: " + std::to_string(h.n_orbitals()) +
                        " orbitals exceeds the cap of " + std::to_string(kMaxOrbitals));
  const std::size_t n = h.n_orbitals();
  std::vector<PauliTerm> acc;
  for (const FermionTerm& t : h.terms()) {
    std::vector<PauliTerm> op;
    if (t.kind == FermionTerm::Kind::OneBody) {
      op = term_product(jw_ladder(t.indices[0], n, true), jw_ladder(t.indices[1], n, false));
    } else {
      op = term_product(
          term_product(jw_ladder(t.indices[0], n, true), jw_ladder(t.indices[1], n, true)),
          term_product(jw_ladder(t.indices[2], n, false), jw_ladder(t.indices[3], n, false)));
    }
    for (PauliTerm& pt : op) {
      pt.coefficient *= t.value;
      acc.push_back(std::move(pt));
    }
  }
  QubitHamiltonian mapped = simplify(QubitHamiltonian(n, std::move(acc)));
  std::vector<PauliTerm> real_terms;
  real_terms.reserve(mapped.terms().size());
  for (const PauliTerm& t : mapped.terms()) {
    if (std::abs(t.coefficient.imag()) > 1e-12)
      throw ValidationError("jordan_wigner: integral data is not Hermitian (term '" +
                            t.string.str() + "' maps with imaginary weight " +
                            format_double(t.coefficient.imag()) + ")");
    real_terms.push_back({t.coefficient.real(), t.string});
  }
  return QubitHamiltonian(n, std::move(real_terms));
}

// ------------------------------------------------------------ file format

namespace {

struct Line {
  int number;
  std::string text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    ++number;
    std::size_t begin = raw.find_first_not_of(" \t\r");
    if (begin != std::string_view::npos && raw[begin] != '#') {
      std::size_t end = raw.find_last_not_of(" \t\r");
      lines.push_back({number, std::string(raw.substr(begin, end - begin + 1))});
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return lines;
}

double parse_value(const std::string& token, int line) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || p != token.data() + token.size())
    throw ParseError("expected a real number, got '" + token + "'", line);
  return v;
}

std::uint32_t parse_index(const std::string& token, int line) {
  std::uint32_t v = 0;
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || p != token.data() + token.size())
    throw ParseError("expected an orbital index, got '" + token + "'", line);
  return v;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

LoadedHamiltonian load_hamiltonian(std::string_view text) {
  std::vector<Line> lines = content_lines(text);
  if (lines.size() < 2) throw ParseError("missing 'format:' and 'n:' header", 1);

  auto header_value = [](const Line& line, const std::string& key) -> std::string {
    if (line.text.rfind(key, 0) != 0)
      throw ParseError("expected '" + key + " ...' header", line.number);
    std::string rest = line.text.substr(key.size());
    std::vector<std::string> toks = split_ws(rest);
    if (toks.size() != 1) throw ParseError("malformed '" + key + "' header", line.number);
    return toks[0];
  };

  const std::string format = header_value(lines[0], "format:");
  if (format != "fermion" && format != "pauli")
    throw ParseError("unknown format '" + format + "' (expected fermion or pauli)",
                     lines[0].number);
  const std::string n_text = header_value(lines[1], "n:");
  const std::uint32_t n = parse_index(n_text, lines[1].number);
  if (n == 0) throw ParseError("n must be positive", lines[1].number);

  if (format == "fermion") {
    std::vector<FermionTerm> terms;
    for (std::size_t k = 2; k < lines.size(); ++k) {
      const Line& line = lines[k];
      std::vector<std::string> toks = split_ws(line.text);
      if (toks.empty()) continue;
      if (toks[0] == "onebody") {
        if (toks.size() != 4)
          throw ParseError("onebody takes 'p q value'", line.number);
        FermionTerm t{FermionTerm::Kind::OneBody,
                      {parse_index(toks[1], line.number), parse_index(toks[2], line.number), 0, 0},
                      parse_value(toks[3], line.number)};
        for (int i = 0; i < 2; ++i)
          if (t.indices[i] >= n)
            throw ValidationError("line " + std::to_string(line.number) + ": orbital index " +
                                  std::to_string(t.indices[i]) + " out of range (n = " +
                                  std::to_string(n) + ")");
        terms.push_back(t);
      } else if (toks[0] == "twobody") {
        if (toks.size() != 6)
          throw ParseError("twobody takes 'p q r s value'", line.number);
        FermionTerm t{FermionTerm::Kind::TwoBody,
                      {parse_index(toks[1], line.number), parse_index(toks[2], line.number),
                       parse_index(toks[3], line.number), parse_index(toks[4], line.number)},
                      parse_value(toks[5], line.number)};
        for (int i = 0; i < 4; ++i)
          if (t.indices[i] >= n)
            throw ValidationError("line " + std::to_string(line.number) + ": orbital index " +
                                  std::to_string(t.indices[i]) + " out of range (n = " +
                                  std::to_string(n) + ")");
        terms.push_back(t);
      } else {
        throw ParseError("expected 'onebody' or 'twobody', got '" + toks[0] + "'", line.number);
      }
    }
    return FermionHamiltonian(n, std::move(terms));
  }

  std::vector<PauliTerm> terms;
  for (std::size_t k = 2; k < lines.size(); ++k) {
    const Line& line = lines[k];
    std::vector<std::string> toks = split_ws(line.text);
    if (toks.size() != 2)
      throw ParseError("pauli line takes '<axes> <coefficient>'", line.number);
    if (toks[0].size() != n)
      throw ParseError("axes string '" + toks[0] + "' has length " +
                           std::to_string(toks[0].size()) + ", expected " + std::to_string(n),
                       line.number);
    PauliString axes = [&] {
      try {
        return PauliString::parse(toks[0]);
      } catch (const ValidationError& e) {
        throw ParseError(e.what(), line.number);
      }
    }();
    terms.push_back({parse_value(toks[1], line.number), std::move(axes)});
  }
  return QubitHamiltonian(n, std::move(terms));
}

LoadedHamiltonian load_hamiltonian_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open molecule file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_hamiltonian(buf.str());
}

QubitHamiltonian to_qubit_hamiltonian(const LoadedHamiltonian& h) {
  if (std::holds_alternative<FermionHamiltonian>(h))
    return jordan_wigner(std::get<FermionHamiltonian>(h));
  return simplify(std::get<QubitHamiltonian>(h));
}

std::string serialize(const QubitHamiltonian& h) {
  std::string out = "format: pauli\nn: " + std::to_string(h.n_qubits()) + "\n";
  for (const PauliTerm& t : h.terms()) {
    if (std::abs(t.coefficient.imag()) > 1e-12)
      throw ValidationError("serialize: coefficient of '" + t.string.str() +
                            "' has an imaginary part; simplify to a Hermitian form first");
    out += t.string.str() + " " + format_double(t.coefficient.real()) + "\n";
  }
  return out;
}

std::string serialize(const FermionHamiltonian& h) {
  std::string out = "format: fermion\nn: " + std::to_string(h.n_orbitals()) + "\n";
  for (const FermionTerm& t : h.terms()) {
    if (t.kind == FermionTerm::Kind::OneBody) {
      out += "onebody " + std::to_string(t.indices[0]) + " " + std::to_string(t.indices[1]) +
             " " + format_double(t.value) + "\n";
    } else {
      out += "twobody " + std::to_string(t.indices[0]) + " " + std::to_string(t.indices[1]) +
             " " + std::to_string(t.indices[2]) + " " + std::to_string(t.indices[3]) + " " +
             format_double(t.value) + "\n";
    }
  }
  return out;
}

}  // namespace vqe
