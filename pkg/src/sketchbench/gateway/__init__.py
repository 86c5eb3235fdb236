from sketchbench.gateway.backends import (
    AuthError,
    BackendSpec,
    GatewayError,
    GatewayTimeout,
    RateLimiter,
    ResponseCache,
    ResponseRecord,
    RetriesExhausted,
    TransientTransportError,
    complete,
    register_mock_transport,
)
from sketchbench.gateway.extract import (
    CodeSample,
    ExtractionError,
    extract_code,
    parse_choice,
)
from sketchbench.gateway.prompts import (
    PromptBundle,
    build_feedback_prompt,
    build_generation_prompt,
    build_parametrized_function_prompt,
    build_recognition_prompt,
)

__all__ = [
    "AuthError",
    "BackendSpec",
    "CodeSample",
    "ExtractionError",
    "GatewayError",
    "GatewayTimeout",
    "PromptBundle",
    "RateLimiter",
    "ResponseCache",
    "ResponseRecord",
    "RetriesExhausted",
    "TransientTransportError",
    "build_feedback_prompt",
    "build_generation_prompt",
    "build_parametrized_function_prompt",
    "build_recognition_prompt",
    "complete",
    "extract_code",
    "parse_choice",
    "register_mock_transport",
]
