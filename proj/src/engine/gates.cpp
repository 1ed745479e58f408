#include "engine/gates.hpp"

#include "common/error.hpp"

#include <array>
#include <cctype>
#include <cmath>

namespace c4q::engine {

namespace {

using namespace std::string_view_literals;

constexpr std::array kIdentityAliases{"identity"sv, "i gate"sv, "id gate"sv};
constexpr std::array kXAliases{"x"sv, "pauli x"sv, "sigma x"sv, "not gate"sv, "bit flip"sv};
constexpr std::array kYAliases{"y"sv, "pauli y"sv, "sigma y"sv};
constexpr std::array kZAliases{"z"sv, "pauli z"sv, "sigma z"sv, "phase flip"sv};
constexpr std::array kSAliases{"s"sv};
constexpr std::array kSdgAliases{"sdg"sv, "s dagger"sv, "sdag"sv, "s dag"sv, "s adjoint"sv, "s inverse"sv};
constexpr std::array kHAliases{"h"sv, "hadamard"sv};
constexpr std::array kPAliases{"p"sv, "phase"sv, "phase shift"sv};
constexpr std::array kRxAliases{"rx"sv, "r x"sv, "x rotation"sv, "rotation x"sv};
constexpr std::array kRyAliases{"ry"sv, "r y"sv, "y rotation"sv, "rotation y"sv};
constexpr std::array kRzAliases{"rz"sv, "r z"sv, "z rotation"sv, "rotation z"sv};
constexpr std::array kCnotAliases{"cnot"sv, "cx"sv, "controlled not"sv, "controlled x"sv, "c not"sv};
constexpr std::array kCzAliases{"cz"sv, "controlled z"sv};
constexpr std::array kSwapAliases{"swap"sv};

constexpr std::string_view kDefineI =
    "The Identity gate (I) is a single-qubit gate that leaves every state unchanged: "
    "I|0⟩ = |0⟩ and I|1⟩ = |1⟩. Its matrix is [[1, 0], [0, 1]].";
constexpr std::string_view kDefineX =
    "The Pauli X gate (X, also called the NOT or bit-flip gate) is a single-qubit gate that "
    "swaps the two basis states: X|0⟩ = |1⟩ and X|1⟩ = |0⟩. Its matrix is [[0, 1], [1, 0]].";
constexpr std::string_view kDefineY =
    "The Pauli Y gate (Y) is a single-qubit gate that flips the basis states and adds a phase: "
    "Y|0⟩ = i|1⟩ and Y|1⟩ = −i|0⟩. Its matrix is [[0, −i], [i, 0]].";
constexpr std::string_view kDefineZ =
    "The Pauli Z gate (Z, also called the phase-flip gate) is a single-qubit gate that leaves "
    "|0⟩ unchanged and flips the phase of |1⟩: Z|0⟩ = |0⟩ and Z|1⟩ = −|1⟩. "
    "Its matrix is diag(1, −1) = [[1, 0], [0, −1]].";
constexpr std::string_view kDefineS =
    "The S gate (S, the square root of Z) is a single-qubit gate that leaves |0⟩ unchanged and "
    "multiplies |1⟩ by i: S|0⟩ = |0⟩ and S|1⟩ = i|1⟩. It equals the phase gate P(pi/2). "
    "Its matrix is diag(1, i) = [[1, 0], [0, i]].";
constexpr std::string_view kDefineSdg =
    "The S† gate (S dagger, the inverse of S) is a single-qubit gate that leaves |0⟩ unchanged "
    "and multiplies |1⟩ by −i: S†|0⟩ = |0⟩ and S†|1⟩ = −i|1⟩. It equals the phase gate "
    "P(−pi/2). Its matrix is diag(1, −i) = [[1, 0], [0, −i]].";
constexpr std::string_view kDefineH =
    "The Hadamard gate (H) is a single-qubit gate that maps the basis states to equal "
    "superpositions: H|0⟩ = |+⟩ = (|0⟩ + |1⟩)/√2 and H|1⟩ = |−⟩ = (|0⟩ − |1⟩)/√2. "
    "Its matrix is (1/√2)[[1, 1], [1, −1]].";
constexpr std::string_view kDefineP =
    "The Phase gate P(φ) is a single-qubit gate with one parameter, the phase shift φ. "
    "It leaves |0⟩ unchanged and multiplies |1⟩ by e^(iφ): P(φ)|0⟩ = |0⟩ and "
    "P(φ)|1⟩ = e^(iφ)|1⟩. Its matrix is diag(1, e^(iφ)) = [[1, 0], [0, e^(iφ)]].";
constexpr std::string_view kDefineRx =
    "The RX(θ) gate is a single-qubit rotation by the angle θ about the X axis of the Bloch "
    "sphere, RX(θ) = cos(θ/2)I − i sin(θ/2)X: RX(θ)|0⟩ = cos(θ/2)|0⟩ − i sin(θ/2)|1⟩ and "
    "RX(θ)|1⟩ = −i sin(θ/2)|0⟩ + cos(θ/2)|1⟩. "
    "Its matrix is [[cos(θ/2), −i sin(θ/2)], [−i sin(θ/2), cos(θ/2)]].";
constexpr std::string_view kDefineRy =
    "The RY(θ) gate is a single-qubit rotation by the angle θ about the Y axis of the Bloch "
    "sphere, RY(θ) = cos(θ/2)I − i sin(θ/2)Y: RY(θ)|0⟩ = cos(θ/2)|0⟩ + sin(θ/2)|1⟩ and "
    "RY(θ)|1⟩ = −sin(θ/2)|0⟩ + cos(θ/2)|1⟩. "
    "Its matrix is [[cos(θ/2), −sin(θ/2)], [sin(θ/2), cos(θ/2)]].";
constexpr std::string_view kDefineRz =
    "The RZ(θ) gate is a single-qubit rotation by the angle θ about the Z axis of the Bloch "
    "sphere, RZ(θ) = cos(θ/2)I − i sin(θ/2)Z: RZ(θ)|0⟩ = e^(−iθ/2)|0⟩ and "
    "RZ(θ)|1⟩ = e^(iθ/2)|1⟩. Its matrix is diag(e^(−iθ/2), e^(iθ/2)) = "
    "[[e^(−iθ/2), 0], [0, e^(iθ/2)]].";
constexpr std::string_view kDefineCnot =
    "The CNOT gate (controlled-NOT) is a two-qubit gate with control qubit q0 and target "
    "qubit q1. It flips the target when the control is |1⟩: CNOT|00⟩ = |00⟩, "
    "CNOT|01⟩ = |01⟩, CNOT|10⟩ = |11⟩ and CNOT|11⟩ = |10⟩. "
    "Its matrix is [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]].";
constexpr std::string_view kDefineCz =
    "The CZ gate (controlled-Z) is a two-qubit gate that flips the phase of |11⟩ and leaves "
    "the other basis states unchanged: CZ|00⟩ = |00⟩, CZ|01⟩ = |01⟩, CZ|10⟩ = |10⟩ and "
    "CZ|11⟩ = −|11⟩. It acts the same whichever qubit is taken as control. "
    "Its matrix is diag(1, 1, 1, −1) = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, −1]].";
constexpr std::string_view kDefineSwap =
    "The SWAP gate is a two-qubit gate that exchanges the states of its two qubits: "
    "SWAP|00⟩ = |00⟩, SWAP|01⟩ = |10⟩, SWAP|10⟩ = |01⟩ and SWAP|11⟩ = |11⟩. "
    "Its matrix is [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]].";

const std::array<GateSpec, kGateCount> kGates{{
    {GateId::I, "I", "Identity", "I", kIdentityAliases, 1, ParamKind::None, kDefineI},
    {GateId::X, "X", "Pauli X", "X", kXAliases, 1, ParamKind::None, kDefineX},
    {GateId::Y, "Y", "Pauli Y", "Y", kYAliases, 1, ParamKind::None, kDefineY},
    {GateId::Z, "Z", "Pauli Z", "Z", kZAliases, 1, ParamKind::None, kDefineZ},
    {GateId::S, "S", "S", "S", kSAliases, 1, ParamKind::None, kDefineS},
    {GateId::SDG, "SDG", "S dagger", "S†", kSdgAliases, 1, ParamKind::None, kDefineSdg},
    {GateId::H, "H", "Hadamard", "H", kHAliases, 1, ParamKind::None, kDefineH},
    {GateId::P, "P", "Phase", "P", kPAliases, 1, ParamKind::Phase, kDefineP},
    {GateId::RX, "RX", "RX", "RX", kRxAliases, 1, ParamKind::Angle, kDefineRx},
    {GateId::RY, "RY", "RY", "RY", kRyAliases, 1, ParamKind::Angle, kDefineRy},
    {GateId::RZ, "RZ", "RZ", "RZ", kRzAliases, 1, ParamKind::Angle, kDefineRz},
    {GateId::CNOT, "CNOT", "CNOT", "CNOT", kCnotAliases, 2, ParamKind::None, kDefineCnot},
    {GateId::CZ, "CZ", "CZ", "CZ", kCzAliases, 2, ParamKind::None, kDefineCz},
    {GateId::SWAP, "SWAP", "SWAP", "SWAP", kSwapAliases, 2, ParamKind::None, kDefineSwap},
}};

bool iequals(std::string_view a, std::string_view b) noexcept {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

const Amplitude kI{0.0, 1.0};

UnitaryMatrix make2(Amplitude a, Amplitude b, Amplitude c, Amplitude d) {
    return UnitaryMatrix(2, {a, b, c, d});
}

UnitaryMatrix pauli(Axis axis) {
    switch (axis) {
    case Axis::X: return make2(0.0, 1.0, 1.0, 0.0);
    case Axis::Y: return make2(0.0, -kI, kI, 0.0);
    case Axis::Z: return make2(1.0, 0.0, 0.0, -1.0);
    }
    return UnitaryMatrix::identity(2);
}

UnitaryMatrix phase_matrix(double phi) { return make2(1.0, 0.0, 0.0, std::polar(1.0, phi)); }

// cos(θ/2)·I − i·sin(θ/2)·A
UnitaryMatrix rotation_matrix(Axis axis, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const UnitaryMatrix a = pauli(axis);
    UnitaryMatrix out(2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t col = 0; col < 2; ++col)
            out(r, col) = (r == col ? c : 0.0) - kI * s * a(r, col);
    return out;
}

UnitaryMatrix make4(std::initializer_list<double> real_entries) {
    std::vector<Amplitude> e(real_entries.begin(), real_entries.end());
    return UnitaryMatrix(4, std::move(e));
}

} // namespace

std::span<const GateSpec> all_gates() noexcept { return kGates; }

const GateSpec& gate_spec(GateId id) noexcept { return kGates[static_cast<std::size_t>(id)]; }

std::optional<GateId> gate_from_key(std::string_view key) noexcept {
    for (const auto& g : kGates)
        if (iequals(g.key, key)) return g.id;
    return std::nullopt;
}

const GateSpec* lookup_gate(std::string_view surface) noexcept {
    for (const auto& g : kGates) {
        if (iequals(g.key, surface) || iequals(g.display_name, surface)) return &g;
        for (auto alias : g.aliases)
            if (alias == surface) return &g;
    }
    return nullptr;
}

std::optional<Axis> rotation_axis(GateId id) noexcept {
    switch (id) {
    case GateId::RX: return Axis::X;
    case GateId::RY: return Axis::Y;
    case GateId::RZ: return Axis::Z;
    default: return std::nullopt;
    }
}

GateId rotation_gate(Axis axis) noexcept {
    switch (axis) {
    case Axis::X: return GateId::RX;
    case Axis::Y: return GateId::RY;
    case Axis::Z: return GateId::RZ;
    }
    return GateId::RZ;
}

UnitaryMatrix gate_matrix(const GateSpec& gate, const GateParams& params) {
    if (gate.param_kind != ParamKind::Phase && params.phase) {
        throw Error(ErrorCode::InvalidArgument,
                    "gate " + std::string(gate.key) + " does not take a phase", {"phase"});
    }
    if (gate.param_kind != ParamKind::Angle && (params.angle || params.axis)) {
        throw Error(ErrorCode::InvalidArgument,
                    "gate " + std::string(gate.key) + " does not take a rotation angle", {"angle"});
    }
    if (gate.param_kind == ParamKind::Phase && !params.phase) {
        throw Error(ErrorCode::ParameterMissing, "the phase gate needs a phase shift", {"phase"});
    }
    if (gate.param_kind == ParamKind::Angle) {
        if (!params.angle) {
            throw Error(ErrorCode::ParameterMissing,
                        "gate " + std::string(gate.key) + " needs a rotation angle", {"angle"});
        }
        if (params.axis && params.axis != rotation_axis(gate.id)) {
            throw Error(ErrorCode::InvalidArgument,
                        "axis " + std::string(axis_name(*params.axis)) + " does not match gate "
                            + std::string(gate.key),
                        {"axis"});
        }
    }

    switch (gate.id) {
    case GateId::I: return UnitaryMatrix::identity(2);
    case GateId::X: return pauli(Axis::X);
    case GateId::Y: return pauli(Axis::Y);
    case GateId::Z: return pauli(Axis::Z);
    case GateId::S: return make2(1.0, 0.0, 0.0, kI);
    case GateId::SDG: return make2(1.0, 0.0, 0.0, -kI);
    case GateId::H: {
        const double h = 1.0 / std::sqrt(2.0);
        return make2(h, h, h, -h);
    }
    case GateId::P: return phase_matrix(*params.phase);
    case GateId::RX: return rotation_matrix(Axis::X, *params.angle);
    case GateId::RY: return rotation_matrix(Axis::Y, *params.angle);
    case GateId::RZ: return rotation_matrix(Axis::Z, *params.angle);
    case GateId::CNOT:
        return make4({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
    case GateId::CZ:
        return make4({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1});
    case GateId::SWAP:
        return make4({1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
    }
    throw Error(ErrorCode::InvalidArgument, "unknown gate");
}

} // namespace c4q::engine
