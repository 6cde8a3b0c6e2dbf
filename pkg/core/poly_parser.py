#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
多项式表达式解析器

文法 (忽略空白):
    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | NAME | '(' expr ')'

解析得到语法树, 再由 evaluate() 在任意环运算上求值: 同一份语法树既可以
落到 F_p[x_1..x_n], 也可以落到有限代数 (变量名映射到代数元素)。
"""

from dataclasses import dataclass
from typing import Any, List, Protocol, Union

from core.errors import ParseError


@dataclass(frozen=True)
class Token:
    kind: str  # INT / NAME / OP / END
    text: str
    offset: int  # 字节偏移


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Var:
    name: str
    offset: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


Node = Union[Const, Var, BinOp, Neg, Pow]


class RingOps(Protocol):
    """求值所需的环运算"""

    def constant(self, value: int) -> Any: ...

    def variable(self, name: str) -> Any: ...

    def add(self, a: Any, b: Any) -> Any: ...

    def sub(self, a: Any, b: Any) -> Any: ...

    def mul(self, a: Any, b: Any) -> Any: ...

    def neg(self, a: Any) -> Any: ...

    def power(self, a: Any, k: int) -> Any: ...


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    n = len(text)

    def byte_offset(k: int) -> int:
        return len(text[:k].encode("utf-8"))

    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("INT", text[i:j], byte_offset(i)))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("NAME", text[i:j], byte_offset(i)))
            i = j
            continue
        if ch in "+-*^()":
            tokens.append(Token("OP", ch, byte_offset(i)))
            i += 1
            continue
        raise ParseError(f"非法字符 {ch!r}", byte_offset(i), text)
    tokens.append(Token("END", "", byte_offset(n)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, text: str = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            wanted = text or kind
            found = tok.text or "输入结尾"
            raise ParseError(f"期望 {wanted!r}, 遇到 {found!r}", tok.offset, self.text)
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            raise ParseError(f"多余的记号 {tok.text!r}", tok.offset, self.text)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind == "OP" and self.peek().text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek().kind == "OP" and self.peek().text == "*":
            self.advance()
            node = BinOp("*", node, self.unary())
        return node

    def unary(self) -> Node:
        tok = self.peek()
        if tok.kind == "OP" and tok.text in "+-":
            self.advance()
            operand = self.unary()
            return Neg(operand) if tok.text == "-" else operand
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek().kind == "OP" and self.peek().text == "^":
            self.advance()
            exponent = self.expect("INT")
            return Pow(base, int(exponent.text))
        return base

    def atom(self) -> Node:
        tok = self.peek()
        if tok.kind == "INT":
            self.advance()
            return Const(int(tok.text))
        if tok.kind == "NAME":
            self.advance()
            return Var(tok.text, tok.offset)
        if tok.kind == "OP" and tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect("OP", ")")
            return node
        found = tok.text or "输入结尾"
        raise ParseError(f"期望数字、变量或 '(' , 遇到 {found!r}", tok.offset, self.text)


def parse_expression(text: str) -> Node:
    """解析表达式文本为语法树"""
    return _Parser(text).parse()


def evaluate(node: Node, ops: RingOps) -> Any:
    """在给定环运算上对语法树求值"""
    if isinstance(node, Const):
        return ops.constant(node.value)
    if isinstance(node, Var):
        return ops.variable(node.name)
    if isinstance(node, Neg):
        return ops.neg(evaluate(node.operand, ops))
    if isinstance(node, Pow):
        return ops.power(evaluate(node.base, ops), node.exponent)
    left = evaluate(node.left, ops)
    right = evaluate(node.right, ops)
    if node.op == "+":
        return ops.add(left, right)
    if node.op == "-":
        return ops.sub(left, right)
    return ops.mul(left, right)


def split_generators(text: str) -> List[str]:
    """按顶层逗号切分生成元列表, 如 "x, y^2, (x+y)" """
    parts: List[str] = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    tail = "".join(current).strip()
    if tail:
        parts.append(tail)
    return [part for part in parts if part]
