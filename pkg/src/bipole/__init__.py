"""Bipolar modules: composition, switching oracle, rewriting engines and
incremental correctness checking."""

from .bigstep import (
    AcyclicResult,
    Redex,
    ReductionTrace,
    acyclic_decide,
    apply_redex,
    bigstep_nf,
    bigstep_trace,
    c_correct,
    collapse_parallel_links,
    decide_acyclic,
    find_redexes,
    replay,
)
from .contraction import (
    C,
    WC,
    Blob,
    Classification,
    ContractedGraph,
    CPole,
    classify,
    compose_cg,
    connectable_decide,
    contract_nf,
    contract_step,
    embed,
)
from .dot import to_dot
from .dsl import SourceFile, build_modules, parse, render
from .errors import (
    BipoleError,
    DuplicateLabel,
    InvalidModule,
    LabelClash,
    NoPoles,
    NotAccepted,
    NotClosed,
    NotNormalForm,
    NotOCorrect,
    NotPending,
    ParseError,
    StaleCandidate,
    StaleRedex,
    UnknownName,
)
from .generate import GenParams, gen_random
from .model import (
    Border,
    Ebm,
    Module,
    Pole,
    as_module,
    border,
    compose,
    compose_chain,
    full_connector,
    is_closed,
    make_ebm,
    module_labels,
    restrict,
    type_formula,
    validate_module,
)
from .session import (
    ACCEPT,
    REJECT_CYCLIC,
    REJECT_DISCONNECTABLE,
    Candidate,
    Session,
    Verdict,
    commit,
    footprint,
    propose,
    session_new,
)
from .switching import (
    SwitchedGraph,
    acyclic_oracle,
    all_connected,
    connectable_oracle,
    dr_correct,
    o_correct_oracle,
    switch_count,
    switched_graph,
    switchings,
)

__version__ = "0.1.0"
