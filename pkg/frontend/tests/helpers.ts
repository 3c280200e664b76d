import { readFileSync } from "node:fs";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import type { FetchLike } from "../src/api.js";

export interface Fixture {
  status: number;
  body: any;
}

export const fixtures: Record<string, Fixture> = JSON.parse(
  readFileSync("tests/fixtures/engine_responses.json", "utf8"),
);

export function fixture(path: string): Fixture {
  const fx = fixtures[path];
  if (!fx) throw new Error(`no fixture recorded for ${path}`);
  return fx;
}

export function fixtureUserIds(path: string): string[] {
  return fixture(path).body.users.map((u: any) => u.user_id);
}

function toResponse(fx: Fixture): Response {
  return new Response(JSON.stringify(fx.body), {
    status: fx.status,
    headers: { "Content-Type": "application/json" },
  });
}

export interface MockFetch {
  fetchFn: FetchLike;
  calls: string[];
  /** URLs added here are parked instead of answered; release with flush. */
  deferred: Set<string>;
  flush: (url: string) => void;
  pendingUrls: () => string[];
  /** When set, every request rejects as if the network dropped. */
  failAll: { on: boolean };
}

/** Fetch stub that replays recorded engine responses byte-for-byte. Unknown
 * URLs reject loudly so a drifting client URL scheme cannot pass silently. */
export function mockFetch(): MockFetch {
  const calls: string[] = [];
  const deferred = new Set<string>();
  const pending = new Map<string, (resp: Response) => void>();
  const failAll = { on: false };
  const fetchFn: FetchLike = (url) => {
    calls.push(url);
    if (failAll.on) return Promise.reject(new TypeError("network down"));
    const fx = fixtures[url];
    if (!fx) return Promise.reject(new Error(`no fixture recorded for ${url}`));
    if (deferred.has(url)) {
      return new Promise<Response>((resolve) => pending.set(url, resolve));
    }
    return Promise.resolve(toResponse(fx));
  };
  const flush = (url: string) => {
    const resolve = pending.get(url);
    if (!resolve) throw new Error(`no pending request for ${url}`);
    pending.delete(url);
    resolve(toResponse(fixture(url)));
  };
  return { fetchFn, calls, deferred, flush, pendingUrls: () => [...pending.keys()], failAll };
}

export interface TestApp {
  app: App;
  root: HTMLElement;
  mock: MockFetch;
}

export async function setupApp(
  opts: { query?: string; init?: boolean } = {},
): Promise<TestApp> {
  history.replaceState(null, "", opts.query ?? "/");
  document.body.replaceChildren();
  const root = document.createElement("div");
  document.body.appendChild(root);
  const mock = mockFetch();
  const app = new App({ root, api: new ApiClient("", mock.fetchFn), win: window });
  if (opts.init !== false) await app.init();
  return { app, root, mock };
}

/** Poll until cond() holds, yielding to the event loop between checks. */
export async function waitFor(cond: () => boolean, tries = 200): Promise<void> {
  for (let i = 0; i < tries; i++) {
    if (cond()) return;
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
  throw new Error("condition never became true");
}
