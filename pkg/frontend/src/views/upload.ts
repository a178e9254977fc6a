/** Landing screen: pick a dataset file and a rules file in either
 * order, optionally an extra split with the same schema, then evaluate. */

export function renderUpload(): string {
  return `
<section class="panel upload">
  <h2>Evaluate a rule file</h2>
  <p>Choose a dataset file and a rules file in any order, then evaluate.
  Parse problems are reported with the offending file and line.</p>
  <form id="upload-form">
    <label class="file-field">Dataset file
      <input type="file" name="data" required>
    </label>
    <label class="file-field">Rules file
      <input type="file" name="rules" required>
    </label>
    <label class="file-field">Extra data split (optional, same schema)
      <input type="file" name="test">
    </label>
    <div id="upload-error"></div>
    <button type="submit">Evaluate</button>
  </form>
</section>`;
}
