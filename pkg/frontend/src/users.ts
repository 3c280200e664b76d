import { el } from "./dom.js";
import { DIMENSIONS } from "./types.js";
import type { UserDetailPayload, UsersPayload } from "./types.js";

export interface ListHandlers {
  onSelect: (userId: string) => void;
}

const PROFILE_FIELDS = ["name", "location", "description"] as const;
const PLACEHOLDER = "-";

/** Render the customer table straight from the API payload: same users,
 * same order, no client-side filtering or sorting. */
export function renderUserList(
  container: HTMLElement,
  payload: UsersPayload,
  handlers: ListHandlers,
): void {
  const summary = el("p", { class: "list-summary" }, [
    `${payload.total} customer${payload.total === 1 ? "" : "s"}`,
    payload.filters ? ` for ${payload.filters}` : "",
    ` (${payload.mode})`,
  ]);
  if (payload.users.length === 0) {
    container.replaceChildren(
      summary,
      el("div", { class: "empty" }, ["No customers match the current filters."]),
    );
    return;
  }
  const head = el("tr", {}, [
    el("th", { class: "col-user" }, ["customer"]),
    ...DIMENSIONS.map((d) => el("th", { class: "col-score" }, [d.slice(0, 5)])),
    el("th", { class: "col-tweets" }, ["tweets"]),
  ]);
  const rows = payload.users.map((user) => {
    const name = user.profile["name"];
    const row = el("tr", { class: "user-row", "data-user-id": user.user_id }, [
      el("td", { class: "col-user" }, [name ? `${user.user_id} (${name})` : user.user_id]),
      ...DIMENSIONS.map((d) =>
        el("td", { class: "col-score", "data-score": String(user.scores[d]) }, [
          user.scores[d].toFixed(2),
        ]),
      ),
      el("td", { class: "col-tweets", "data-tweets": String(user.n_relevant_tweets) }, [
        String(user.n_relevant_tweets),
      ]),
    ]);
    row.addEventListener("click", () => handlers.onSelect(user.user_id));
    return row;
  });
  const table = el("table", { class: "user-table" }, [
    el("thead", {}, [head]),
    el("tbody", {}, rows),
  ]);
  container.replaceChildren(summary, table);
}

export function renderListError(container: HTMLElement, message: string): void {
  container.replaceChildren(el("div", { class: "list-error" }, [message]));
}

export interface DetailHandlers {
  onClose: () => void;
}

export function renderDetailPlaceholder(container: HTMLElement): void {
  container.replaceChildren(
    el("div", { class: "detail-empty" }, ["Select a customer to see details."]),
  );
}

function formatTimestamp(ts: number): string {
  const d = new Date(ts * 1000);
  return Number.isFinite(d.getTime()) ? d.toISOString().replace("T", " ").slice(0, 16) : String(ts);
}

/** Profile, both score columns, and relevant tweets newest-first. */
export function renderDetail(
  container: HTMLElement,
  payload: UserDetailPayload,
  handlers: DetailHandlers,
): void {
  const closeBtn = el("button", { class: "detail-close", title: "close" }, ["×"]);
  closeBtn.addEventListener("click", () => handlers.onClose());
  const header = el("div", { class: "detail-header" }, [
    el("h2", {}, [payload.user_id]),
    closeBtn,
  ]);

  const profile = el(
    "dl",
    { class: "detail-profile" },
    PROFILE_FIELDS.flatMap((field) => [
      el("dt", {}, [field]),
      el("dd", { "data-field": field }, [payload.profile[field] || PLACEHOLDER]),
    ]),
  );

  const scoreRows = DIMENSIONS.map((d) =>
    el("tr", { "data-dim": d }, [
      el("td", {}, [d]),
      el("td", { class: "num" }, [payload.scores[d].toFixed(2)]),
      el("td", { class: "num" }, [payload.static_scores[d].toFixed(2)]),
    ]),
  );
  const scores = el("table", { class: "detail-scores" }, [
    el("thead", {}, [
      el("tr", {}, [
        el("th", {}, ["dimension"]),
        el("th", {}, ["collective"]),
        el("th", {}, ["independent"]),
      ]),
    ]),
    el("tbody", {}, scoreRows),
  ]);

  const tweets = [...payload.relevant_tweets].sort((a, b) => b.timestamp - a.timestamp);
  const tweetItems = tweets.map((t) =>
    el("li", { class: "tweet", "data-timestamp": String(t.timestamp) }, [
      el("span", { class: "tweet-time" }, [formatTimestamp(t.timestamp)]),
      el("span", { class: "tweet-text" }, [t.text]),
    ]),
  );
  const tweetList = el("ul", { class: "detail-tweets" }, tweetItems);

  container.replaceChildren(
    header,
    profile,
    scores,
    el("h3", {}, [`relevant tweets (${tweets.length})`]),
    tweetList,
  );
}
