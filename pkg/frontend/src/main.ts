import { mount } from "./app.js";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app element");
}
// Same-origin by default; override for a separately served API.
const baseUrl = root.dataset.apiBase ?? "";
const app = mount(root, baseUrl);
app.form.addDimensionRow();
