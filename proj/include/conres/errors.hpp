#pragma once

#include <stdexcept>
#include <string>

namespace conres {

// Base class for all toolkit errors. CLI maps InvariantViolation-like
// failures to exit code 2 and numerical failures to exit code 3.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class MalformedDocument : public Error {
public:
    explicit MalformedDocument(const std::string& what)
        : Error("MalformedDocument: " + what) {}
};

class UnknownModel : public Error {
public:
    explicit UnknownModel(const std::string& what)
        : Error("UnknownModel: " + what) {}
};

class InvariantViolation : public Error {
public:
    explicit InvariantViolation(const std::string& what)
        : Error("InvariantViolation: " + what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what)
        : Error("NumericalError: " + what) {}
};

class DegenerateAngle : public InvariantViolation {
public:
    explicit DegenerateAngle(const std::string& what)
        : InvariantViolation("DegenerateAngle: " + what) {}
};

class AngleOutOfRange : public InvariantViolation {
public:
    explicit AngleOutOfRange(const std::string& what)
        : InvariantViolation("AngleOutOfRange: " + what) {}
};

class CapExceeded : public InvariantViolation {
public:
    explicit CapExceeded(const std::string& what)
        : InvariantViolation("CapExceeded: " + what) {}
};

class EmptyInput : public InvariantViolation {
public:
    explicit EmptyInput(const std::string& what)
        : InvariantViolation("EmptyInput: " + what) {}
};

class BrokenChain : public InvariantViolation {
public:
    explicit BrokenChain(const std::string& what)
        : InvariantViolation("BrokenChain: " + what) {}
};

class GeometricSingularity : public NumericalError {
public:
    explicit GeometricSingularity(const std::string& what)
        : NumericalError("GeometricSingularity: " + what) {}
};

class NotStrictlyDiffractive : public InvariantViolation {
public:
    explicit NotStrictlyDiffractive(const std::string& what)
        : InvariantViolation("NotStrictlyDiffractive: " + what) {}
};

class DomainExceeded : public NumericalError {
public:
    explicit DomainExceeded(const std::string& what)
        : NumericalError("DomainExceeded: " + what) {}
};

class BranchCut : public NumericalError {
public:
    explicit BranchCut(const std::string& what)
        : NumericalError("BranchCut: " + what) {}
};

class ZeroFrequency : public NumericalError {
public:
    explicit ZeroFrequency(const std::string& what)
        : NumericalError("ZeroFrequency: " + what) {}
};

class ZeroOnContour : public NumericalError {
public:
    explicit ZeroOnContour(const std::string& what)
        : NumericalError("ZeroOnContour: " + what) {}
};

class ContourThroughZero : public NumericalError {
public:
    explicit ContourThroughZero(const std::string& what)
        : NumericalError("ContourThroughZero: " + what) {}
};

class NonConvergentQuadrature : public NumericalError {
public:
    explicit NonConvergentQuadrature(const std::string& what)
        : NumericalError("NonConvergentQuadrature: " + what) {}
};

class DepthExceeded : public NumericalError {
public:
    explicit DepthExceeded(const std::string& what)
        : NumericalError("DepthExceeded: " + what) {}
};

class NoConvergence : public NumericalError {
public:
    explicit NoConvergence(const std::string& what)
        : NumericalError("NoConvergence: " + what) {}
};

class NoCycle : public Error {
public:
    explicit NoCycle(const std::string& what) : Error("NoCycle: " + what) {}
};

class EmptySchedule : public InvariantViolation {
public:
    explicit EmptySchedule(const std::string& what)
        : InvariantViolation("EmptySchedule: " + what) {}
};

class MissingEntry : public InvariantViolation {
public:
    explicit MissingEntry(const std::string& what)
        : InvariantViolation("MissingEntry: " + what) {}
};

class TooFewPoints : public InvariantViolation {
public:
    explicit TooFewPoints(const std::string& what)
        : InvariantViolation("TooFewPoints: " + what) {}
};

class NonpositiveL : public InvariantViolation {
public:
    explicit NonpositiveL(const std::string& what)
        : InvariantViolation("NonpositiveL: " + what) {}
};

class NonpositiveDmax : public InvariantViolation {
public:
    explicit NonpositiveDmax(const std::string& what)
        : InvariantViolation("NonpositiveDmax: " + what) {}
};

class NonpositiveDiam : public InvariantViolation {
public:
    explicit NonpositiveDiam(const std::string& what)
        : InvariantViolation("NonpositiveDiam: " + what) {}
};

}  // namespace conres
