#include "fsc/any_coder.hpp"

#include <algorithm>

#include "fsc/errors.hpp"

namespace fsc {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

std::string to_string(CoderKind kind) {
  switch (kind) {
    case CoderKind::fsc: return "fsc";
    case CoderKind::psc: return "psc";
    case CoderKind::pscd: return "pscd";
    case CoderKind::csl: return "csl";
  }
  return "unknown";
}

CoderKind parse_coder_kind(const std::string& name) {
  if (name == "fsc") return CoderKind::fsc;
  if (name == "psc") return CoderKind::psc;
  if (name == "pscd") return CoderKind::pscd;
  if (name == "csl") return CoderKind::csl;
  throw InvalidInput("unknown coder '" + name + "' (expected fsc, psc, pscd or csl)");
}

AnyCoder::AnyCoder(Spec spec) : spec_(std::move(spec)) {
  std::visit([](const auto& s) { s.validate(); }, spec_);
}

AnyCoder AnyCoder::fsc(int n_freq) {
  CoderSpec s;
  s.n_freq = n_freq;
  return AnyCoder(s);
}

AnyCoder AnyCoder::psc() { return AnyCoder(PscSpec{}); }

AnyCoder AnyCoder::pscd(std::optional<double> heuristic_threshold) {
  PscSpec s;
  s.dual_frequency = true;
  s.heuristic_threshold = heuristic_threshold;
  return AnyCoder(s);
}

AnyCoder AnyCoder::csl(int n_bins) {
  CslSpec s;
  s.n_bins = n_bins;
  s.window_radius = std::min(s.window_radius, (n_bins - 1) / 2);
  return AnyCoder(s);
}

CoderKind AnyCoder::kind() const {
  return std::visit(Overloaded{
                        [](const CoderSpec&) { return CoderKind::fsc; },
                        [](const PscSpec& s) { return s.dual_frequency ? CoderKind::pscd : CoderKind::psc; },
                        [](const CslSpec&) { return CoderKind::csl; },
                    },
                    spec_);
}

std::string AnyCoder::name() const { return to_string(kind()); }

const AngleDefinition& AnyCoder::definition() const {
  return std::visit([](const auto& s) -> const AngleDefinition& { return s.definition; }, spec_);
}

int AnyCoder::channel_count() const {
  return std::visit(Overloaded{
                        [](const CoderSpec& s) { return s.channel_count(); },
                        [](const PscSpec& s) { return s.channel_count(); },
                        [](const CslSpec& s) { return s.n_bins; },
                    },
                    spec_);
}

std::vector<double> AnyCoder::encode(const OrientedAngle& theta) const {
  return std::visit(Overloaded{
                        [&](const CoderSpec& s) { return fsc::encode(theta, s).components; },
                        [&](const PscSpec& s) { return psc_encode(theta, s); },
                        [&](const CslSpec& s) { return csl_encode(theta, s); },
                    },
                    spec_);
}

DecodeResult AnyCoder::decode(std::span<const double> raw) const {
  return std::visit(Overloaded{
                        [&](const CoderSpec& s) { return fsc::decode(raw, s); },
                        [&](const PscSpec& s) { return psc_decode(raw, s); },
                        [&](const CslSpec& s) {
                          return DecodeResult{csl_decode(raw, s), {}, false};
                        },
                    },
                    spec_);
}

std::vector<double> AnyCoder::moduli(std::span<const double> raw) const {
  return std::visit(
      Overloaded{
          [&](const CoderSpec& s) {
            auto m = per_frequency_modulus(raw, s);
            m.resize(std::min<size_t>(m.size(), 2));
            return m;
          },
          [&](const PscSpec& s) {
            if (static_cast<int>(raw.size()) != s.channel_count()) {
              throw InvalidInput("PSC channel count mismatch");
            }
            std::vector<double> m{psc_synthesize(raw.subspan(0, 3), psc_phases(1)).modulus() /
                                  PscSpec::kCleanModulus};
            if (s.dual_frequency) {
              m.push_back(psc_synthesize(raw.subspan(3, 3), psc_phases(2)).modulus() /
                          PscSpec::kCleanModulus);
            }
            return m;
          },
          [&](const CslSpec&) { return std::vector<double>{}; },
      },
      spec_);
}

}  // namespace fsc
